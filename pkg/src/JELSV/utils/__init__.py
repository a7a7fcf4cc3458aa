from ._stats import *
from ._utils import *
