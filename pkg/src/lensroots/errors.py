"""Exception hierarchy shared by every module.

Each exception carries a short machine-readable ``code`` used by the CLI
when it emits error reports.
"""


class LensrootsError(Exception):
    code = "error"


class ZeroPolynomial(LensrootsError):
    """Operation undefined for the identically zero polynomial."""
    code = "zero_polynomial"


class NotAdmissible(LensrootsError):
    """Some top-part factor has |gamma| within the band around 1."""
    code = "not_admissible"


class CircleThroughZero(LensrootsError):
    """A winding-number circle passes through (or too close to) a zero."""
    code = "circle_through_zero"


class NonIsolatedZeroSet(LensrootsError):
    """Subdivision produced long chains of undecidable boxes."""
    code = "non_isolated_zero_set"


class UncertifiedCount(LensrootsError):
    """A certified integer count was requested but could not be established."""
    code = "uncertified_count"


class RayViolation(LensrootsError):
    """A root does not sit on the expected union of rays."""
    code = "ray_violation"


class NotInvariant(LensrootsError):
    """The root set is not stable under the cyclic rotation action."""
    code = "not_invariant"


class NotSquarefree(LensrootsError):
    """Sturm counting requires a squarefree polynomial."""
    code = "not_squarefree"


class BadParameters(LensrootsError):
    code = "bad_parameters"


class DegreeViolation(LensrootsError):
    code = "degree_violation"


class DuplicatePoles(LensrootsError):
    code = "duplicate_poles"


class ZeroIsRoot(LensrootsError):
    """The construction requires the origin not to be a zero."""
    code = "zero_is_root"


class NotInClass(LensrootsError):
    """Polynomial does not belong to the required degree class."""
    code = "not_in_class"


class BadWeight(LensrootsError):
    code = "bad_weight"


class NotConvenient(LensrootsError):
    """Homogeneous polynomial misses a required pure-axis monomial."""
    code = "not_convenient"


class NonPositivePolarDegree(LensrootsError):
    code = "non_positive_polar_degree"


class InputError(LensrootsError):
    """Malformed user input (JSON, text form, CLI flags)."""
    code = "input_error"
