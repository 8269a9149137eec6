from .errors import *
from .logger import *
from .config import *
from .basic_report import *
from .braid import *
from .plabic import *
from .matrix import *
from .exchange import *
from .autgroup import *
from .variety import *
from .render import *
from .report import *
