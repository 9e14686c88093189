from .schema import RunConfig, SolutionKind, SuiteName, SuiteReport, CheckResult, load_config
from .linalg_core import RealLinearOperator
from .solutions import ModeSpec, SolutionSpec, PlaneWaveSum, FieldJet, EMField
from .evolve import FieldGrid
from .suites import run_suite
from .report_logger import ReportLogger

__all__ = [
    'RunConfig',
    'SolutionKind',
    'SuiteName',
    'SuiteReport',
    'CheckResult',
    'load_config',
    'RealLinearOperator',
    'ModeSpec',
    'SolutionSpec',
    'PlaneWaveSum',
    'FieldJet',
    'EMField',
    'FieldGrid',
    'run_suite',
    'ReportLogger',
]
