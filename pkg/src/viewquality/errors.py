"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the documented domain of an operation."""


class DegenerateGeometryError(DomainError):
    """Geometry does not admit a well-defined answer (e.g. eye in the window plane)."""


class ConfigurationRequiredError(ValueError):
    """A required threshold has no default and was not supplied."""


class ProjectValidationError(ValueError):
    """A project file failed validation. Carries every problem found, not just the first."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
