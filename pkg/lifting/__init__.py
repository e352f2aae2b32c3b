from .residual import ResidualGaloisData
from .tau import TauLift, lift_prime_to_p_rep
from .extension import nu_tame_extend
from .unipotent import UnipotentLift, pure_unipotent_lift
from .frobenius import frobenius_lift
from .verify import VerifyReport, transporter_conjugate, verify_lift
from .pipeline import LiftPipeline, MRLift, assemble_mr_lift
