from .cartan_type import CartanType
from .root_system import RootSystem, build_root_system, weyl_order
from .root_datum import IsogenyClass, RootDatum, build_root_datum, center_and_pi1
from .subsystems import ClosedSubsystem, enumerate_closed_subsystems, brute_force_closed_subsystems
from .balacarter import LeviClass, BCLabel, levi_classes, grading_dims, is_distinguished, bala_carter_data
