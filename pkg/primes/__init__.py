from .component_bounds import cG_bound, improved_constant, lambda_bound, nonconnected_bound
from .prime_report import PrimeReport, build_prime_report, center_smooth, effective_p_bound, good_bad_primes, pretty_good_bad_primes
