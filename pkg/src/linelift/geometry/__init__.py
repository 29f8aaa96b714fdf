"""Chart-atlas geometry for the catalog surfaces: charts, actions, forms,
paths, scenarios, and the numerical pairings every other module consumes."""

from .actions import TorusAction, rotation_action, translation_action, trivial_action
from .calculus import (
    doubling_residual_line,
    doubling_residual_surface,
    integrate_one_form,
    integrate_two_form,
    pair_h1,
)
from .charts import Atlas, Chart, project_to_chart, push_to_ambient, sphere_angles
from .forms import (
    OneForm,
    TwoForm,
    constant_one_form,
    exterior_derivative,
    exterior_derivative_fd,
    one_form_on_ambient,
    two_form_on_ambient,
    zero_one_form,
    zero_two_form,
)
from .paths import (
    CyclePatch,
    CycleSpec,
    PathSegment,
    PathSpec,
    orbit_loop,
    reparametrized,
    sphere_latitude_loop,
    sphere_meridian_loop,
    torus_line_loop,
    torus_small_circle,
    validate_path,
)
from .scenarios import CATALOG, ManifoldScenario, generating_field, get_scenario

__all__ = [
    "Atlas",
    "CATALOG",
    "Chart",
    "CyclePatch",
    "CycleSpec",
    "ManifoldScenario",
    "OneForm",
    "PathSegment",
    "PathSpec",
    "TorusAction",
    "TwoForm",
    "constant_one_form",
    "doubling_residual_line",
    "doubling_residual_surface",
    "exterior_derivative",
    "exterior_derivative_fd",
    "generating_field",
    "get_scenario",
    "integrate_one_form",
    "integrate_two_form",
    "one_form_on_ambient",
    "orbit_loop",
    "pair_h1",
    "project_to_chart",
    "push_to_ambient",
    "reparametrized",
    "rotation_action",
    "sphere_angles",
    "sphere_latitude_loop",
    "sphere_meridian_loop",
    "torus_line_loop",
    "torus_small_circle",
    "translation_action",
    "trivial_action",
    "two_form_on_ambient",
    "validate_path",
    "zero_one_form",
    "zero_two_form",
]
