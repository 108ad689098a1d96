__ALL__ = ['Workbench', 'FiniteField', 'WeierstrassCurve', 'GramLattice', 'SurfaceModel']
__version__ = '1.0.0'

DEFAULT_PMAX = 199
DEFAULT_P2MAX = 43
DEFAULT_ISOMETRY_BOUND = 10
DEFAULT_HESSE_SAMPLES = 100
REPORT_STATUSES = ('pass', 'fail', 'conditional-pass', 'skipped')

# assumption tags attached to conditional results
ARTIN_TATE = 'artin-tate'
TATE_K3 = 'tate-k3'


from surfaceverifier.fields import FiniteField, build_extension  # NOQA
from surfaceverifier.curves import WeierstrassCurve  # NOQA
from surfaceverifier.lattices import GramLattice  # NOQA
from surfaceverifier.surfaces import SurfaceModel  # NOQA
from surfaceverifier.workbench import Workbench  # NOQA
