"""feedsim: deterministic software twin of a voice-commanded feeding arm."""

from ._kernels import BACKEND_NAME
from .commands import Command, EmergencyStop, PresenceOverride, Serve, Stop
from .controller import ControllerState, FeedingController, Menu, TelemetryFrame
from .ik import IKRequest, IKResult, snap_to_limits, solve_ik
from .kinematics import forward_kinematics, link_transform, numerical_jacobian, workspace_sample
from .model import DHRow, RobotModel, load_default_model
from .parser import Lexicon, NoMatch, levenshtein, parse
from .trajectory import Segment, TrajectoryPoint, plan_segment, sample

__version__ = "0.1.0"
