from .config import PipelineConfig, config_from_dict, load_config
from .evaluate import EVALUABLE, evaluate
from .manifest import RunManifest, file_sha256
from .stages import STAGE_ORDER, run_all, run_stage

__all__ = [
    "EVALUABLE",
    "PipelineConfig",
    "RunManifest",
    "STAGE_ORDER",
    "config_from_dict",
    "evaluate",
    "file_sha256",
    "load_config",
    "run_all",
    "run_stage",
]
