from typing import Any, Dict, List, Optional

from config.base import get_settings
from core.enums.run_command import RunCommand
from models.engine import EngineSpec
from models.simulation import SimConfig
from schemas.base import BaseSchema

settings = get_settings()


class RunManifest(BaseSchema):
    """Echo of a CLI run, written next to its artifact"""
    command: RunCommand
    spec_path: Optional[str] = None
    output_path: Optional[str] = None
    parameters: Dict[str, Any] = {}
    version: str = settings.APP_VERSION
    schema_version: str = settings.CSV_SCHEMA_VERSION
    seed: Optional[int] = None


# Request schemas of the HTTP front end
class StrategyRequest(BaseSchema):
    spec: EngineSpec
    r: float


class CeSweepRequest(BaseSchema):
    spec: EngineSpec
    r_values: List[float]


class FrontierRequest(BaseSchema):
    spec: EngineSpec
    ns: List[int]
    epsilons: List[float]


class SimulateRequest(BaseSchema):
    config: SimConfig
    r: float = 0.0


class KellyRequest(BaseSchema):
    spec: EngineSpec
    r_values: List[float] = []
