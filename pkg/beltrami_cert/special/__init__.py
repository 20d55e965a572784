from beltrami_cert.special.expei import ExpEiRegime, expei_enclosure, expei_with_regime
from beltrami_cert.special.zeta import zeta, zeta_remainder, zeta_remainder_sum

__all__ = [
    "ExpEiRegime",
    "expei_enclosure",
    "expei_with_regime",
    "zeta",
    "zeta_remainder",
    "zeta_remainder_sum",
]
