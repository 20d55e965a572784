from beltrami_cert.rigor.interval import Interval
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.balls import BallArray

__all__ = ["Interval", "Disk", "BallArray"]
