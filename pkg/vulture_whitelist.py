"""Vulture whitelist for false positives.

This file tells vulture to ignore code that appears unused but is reached
through frameworks, decorators or serialization.

Categories:
- Pydantic model fields and validators (called by Pydantic)
- Typer CLI commands (registered via decorators)
- Enum values (used via serialization/deserialization)
- Exception classes (part of public API, used by callers)
"""

# Pydantic model fields - accessed via .model_dump(), serialization, etc.
model_config  # paulilab/models/settings.py - Pydantic settings config
quadrature_error  # paulilab/models/domain/weyl.py - WeylSummary field
kappa_star  # paulilab/models/domain/scaling.py - RemainderPrediction field

# Pydantic validators - called by Pydantic framework
_.validate_extent  # paulilab/models/settings.py
_.validate_expression_required_for_custom  # paulilab/models/settings.py
_.validate_step  # paulilab/models/settings.py
_.validate_sweep  # paulilab/models/settings.py
_.validate_dropped  # paulilab/models/domain/scaling.py
_.validate_mu_bar  # paulilab/models/domain/selfgen.py

# Enum values - used via serialization
HARMONIC_CAPPED  # paulilab/models/enums.py - Preset.HARMONIC_CAPPED
NEAR_CRITICAL  # paulilab/models/enums.py - RegimeTag.NEAR_CRITICAL
LOCALIZED_CORRECTED  # paulilab/models/enums.py - FitTarget.LOCALIZED_CORRECTED

# Typer CLI commands - registered via decorators, called by CLI framework
weyl  # paulilab/cli/weyl.py
spectrum  # paulilab/cli/spectrum.py
minimize_command  # paulilab/cli/minimize.py
localize  # paulilab/cli/localize.py
dynamics  # paulilab/cli/dynamics.py
plan  # paulilab/cli/plan.py
sweep  # paulilab/cli/sweep.py
fit  # paulilab/cli/fit.py
report  # paulilab/cli/report.py

# Exception classes - public API for error handling
AliasingError  # paulilab/exceptions.py
IntegratorInstabilityError  # paulilab/exceptions.py
