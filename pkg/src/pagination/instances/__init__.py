"""Rule checks and reductions, generators, adversarial constructions and file formats."""

from .adversarial import af_adversarial, specialized_adversarial
from .formats import (
    dumps_instance,
    dumps_pagination,
    loads_instance,
    loads_pagination,
    read_instance,
    read_pagination,
    write_instance,
    write_pagination,
)
from .generator import (
    RNG_ALGORITHM,
    GenerationError,
    GeneratorConfig,
    generate,
    generate_sweep,
    sweep_configs,
)
from .rules import RULES, ReductionLog, RuleReport, RuleStatus, check_rules, reduce
