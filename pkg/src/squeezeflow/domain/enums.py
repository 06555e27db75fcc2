from enum import Enum


class ProfileField(Enum):
    """Profile quantities that can be tabulated or enveloped."""

    F = "f"
    FPRIME = "fprime"
    THETA = "theta"
    PHI = "phi"


class Pairing(Enum):
    """Pairs of uncertain parameters compared by the sensitivity report."""

    S_M = "S,M"
    S_A = "S,A"
    A_M = "A,M"

    @property
    def parameters(self) -> tuple[str, str]:
        first, second = self.value.split(",")
        return first, second

    @property
    def crisp_parameter(self) -> str:
        """The one of S, A, M held at its base value."""
        (name,) = {"S", "A", "M"} - set(self.parameters)
        return name


class Command(Enum):
    """CLI subcommands."""

    SOLVE = "solve"
    SWEEP = "sweep"
    VALIDATE = "validate"
    REPORT = "report"


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


# Widest band per field stated by the published sensitivity study.
PUBLISHED_WIDEST: dict[ProfileField, Pairing] = {
    ProfileField.FPRIME: Pairing.A_M,
    ProfileField.THETA: Pairing.S_A,
    ProfileField.PHI: Pairing.S_A,
}
