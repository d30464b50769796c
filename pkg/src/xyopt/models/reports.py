from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class TwistReport:
    """Result of scanning the mixed derivative D2 D1 h on a lattice."""

    holds: bool
    worst_value: float
    worst_point: tuple[float, float]

    def __json__(self) -> dict:
        return {
            "holds": self.holds,
            "worst_value": self.worst_value,
            "worst_point": list(self.worst_point),
        }


@dataclass(frozen=True)
class H3Report:
    """Result of sampling the strict quadrangle inequality."""

    holds_on_samples: bool
    worst_margin: float
    samples: int

    def __json__(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PairCheckReport:
    """Worst (i, j) comparison of an orbit check over the pairs i < j."""

    passes: bool
    worst_pair: tuple[int, int] | None
    worst_defect: float
    pairs_checked: int = 0

    def __json__(self) -> dict:
        return {
            "passes": self.passes,
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
            "worst_defect": self.worst_defect,
            "pairs_checked": self.pairs_checked,
        }


@dataclass(frozen=True)
class ComponentVerdict:
    """
    Verdict for one anchor pair of a quotient.

    ``expectation`` is ``"inequivalent"`` for anchors in distinct components,
    ``"equivalent"`` for a shared component whose interval-equivalence defect
    vanishes, and ``"exempt"`` otherwise. ``margin`` is positive when the
    expectation holds with room to spare; exempt pairs carry ``closed_form``
    when the potential has one.
    """

    a: float
    b: float
    same_component: bool
    expectation: str
    delta: float
    margin: float
    holds: bool
    closed_form: float | None = None

    def __json__(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PseudoMetricReport:
    """Largest violation of each pseudo-metric axiom for a delta matrix."""

    symmetry: float
    negativity: float
    diagonal: float
    triangle: float

    def __json__(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DiagonalScanReport:
    """
    Aubry set realized on the grid: anchors have |S[a][a]| small, diagonal
    samples well above the minimum keep S[a][a] bounded away from zero.
    """

    anchor_worst: float
    anchors_pass: bool
    sample_count: int
    sample_minimum: float
    samples_pass: bool

    def __json__(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class WordVerdict:
    """Predicted versus observed Mane membership for one word."""

    word: str
    predicted: bool
    observed: bool
    worst_defect: float
    worst_pair: tuple[int, int] | None

    @property
    def agrees(self) -> bool:
        return self.predicted == self.observed

    def __json__(self) -> dict:
        return {
            "word": self.word,
            "predicted": self.predicted,
            "observed": self.observed,
            "worst_defect": self.worst_defect,
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
            "agrees": self.agrees,
        }


@dataclass
class ConfusionTable:
    """Counts of predicted/observed membership over a list of words."""

    verdicts: list[WordVerdict] = field(default_factory=list)

    def add(self, verdict: WordVerdict) -> None:
        self.verdicts.append(verdict)

    def count(self, predicted: bool, observed: bool) -> int:
        return sum(
            1
            for v in self.verdicts
            if v.predicted == predicted and v.observed == observed
        )

    @property
    def disagreements(self) -> int:
        return sum(1 for v in self.verdicts if not v.agrees)

    def __json__(self) -> dict:
        return {
            "true_true": self.count(True, True),
            "true_false": self.count(True, False),
            "false_true": self.count(False, True),
            "false_false": self.count(False, False),
            "disagreements": self.disagreements,
            "verdicts": [v.__json__() for v in self.verdicts],
        }


RELATIONS = ("<=", ">=", ">")


@dataclass(frozen=True)
class CheckResult:
    """One acceptance measurement compared against its threshold."""

    name: str
    value: float
    threshold: float
    relation: str = "<="

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}")

    @property
    def passed(self) -> bool:
        if self.relation == "<=":
            return self.value <= self.threshold
        if self.relation == ">=":
            return self.value >= self.threshold
        return self.value > self.threshold

    @property
    def margin(self) -> float:
        """Distance to the threshold, positive on the passing side."""
        if self.relation == "<=":
            return self.threshold - self.value
        return self.value - self.threshold

    def __json__(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "threshold": self.threshold,
            "relation": self.relation,
            "margin": self.margin,
            "passed": self.passed,
        }
