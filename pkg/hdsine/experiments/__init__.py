from .identities import IdentitiesExperiment
from .semimetric import SemimetricExperiment
from .funceq import FunceqExperiment
from .concentration import ConcentrationExperiment
from .tube_bound import TubeBoundExperiment
from .replay import ReplayExperiment
