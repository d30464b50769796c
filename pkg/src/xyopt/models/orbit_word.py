from dataclasses import dataclass
from math import isfinite

from ..exceptions import ConfigError, DomainError


@dataclass(frozen=True)
class OrbitWord:
    """
    An eventually periodic point of [0, 1]^N0: ``symbols`` followed by the
    block ``tail`` repeated forever.

    A one-symbol tail is the eventually fixed case x_0 ... x_n c c c ...;
    a constant word whose tail equals its symbol is the fixed point c^inf.
    """

    symbols: tuple[float, ...] = ()
    tail: tuple[float, ...] = (0.0,)

    def __post_init__(self):
        symbols = _as_symbols(self.symbols, "symbols")
        tail = _as_symbols(
            self.tail if isinstance(self.tail, (list, tuple)) else (self.tail,), "tail"
        )
        if not tail:
            raise DomainError("An orbit word needs a non-empty tail")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "tail", tail)

    @property
    def period(self) -> int:
        return len(self.tail)

    @property
    def is_eventually_fixed(self) -> bool:
        return len(self.canonical().tail) == 1

    @property
    def tail_symbol(self) -> float | None:
        """The fixed tail symbol c, or None for a longer primitive tail block."""
        tail = self.canonical().tail
        return tail[0] if len(tail) == 1 else None

    def symbol_at(self, k: int) -> float:
        if k < len(self.symbols):
            return self.symbols[k]
        return self.tail[(k - len(self.symbols)) % len(self.tail)]

    def expand(self, length: int) -> list[float]:
        """The first ``length`` coordinates of the represented point."""
        return [self.symbol_at(k) for k in range(length)]

    def shift(self, steps: int = 1) -> "OrbitWord":
        """The word representing sigma^steps of this point."""
        if steps <= len(self.symbols):
            return OrbitWord(self.symbols[steps:], self.tail)
        offset = (steps - len(self.symbols)) % len(self.tail)
        return OrbitWord((), self.tail[offset:] + self.tail[:offset])

    def canonical(self) -> "OrbitWord":
        """Unique representation: primitive tail block, shortest prefix."""
        tail = self.tail
        for p in range(1, len(tail) + 1):
            if len(tail) % p == 0 and tail == tail[:p] * (len(tail) // p):
                tail = tail[:p]
                break

        symbols = list(self.symbols)
        while symbols and symbols[-1] == tail[-1]:
            symbols.pop()
            tail = (tail[-1],) + tail[:-1]
        return OrbitWord(tuple(symbols), tail)

    def same_point(self, other: "OrbitWord") -> bool:
        mine, theirs = self.canonical(), other.canonical()
        return mine.symbols == theirs.symbols and mine.tail == theirs.tail

    def __str__(self) -> str:
        head = " ".join(f"{s:g}" for s in self.symbols)
        block = " ".join(f"{s:g}" for s in self.tail)
        return f"{head} ({block})^inf".strip() if head else f"({block})^inf"

    def __json__(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "tail": self.tail[0] if len(self.tail) == 1 else list(self.tail),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OrbitWord":
        if not isinstance(data, dict) or "tail" not in data:
            raise ConfigError(f"Words are {{'symbols': [...], 'tail': c}}, got {data!r}")
        tail = data["tail"]
        try:
            return cls(
                symbols=tuple(data.get("symbols") or ()),
                tail=tuple(tail) if isinstance(tail, list) else (tail,),
            )
        except DomainError as e:
            raise ConfigError(f"Invalid word {data!r}: {e}") from e

    @classmethod
    def constant(cls, c: float) -> "OrbitWord":
        return cls((c,), (c,))


def _as_symbols(values, label: str) -> tuple[float, ...]:
    symbols = []
    for value in values:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DomainError(f"Word {label} must be numbers, got {value!r}")
        if not isfinite(value) or not 0.0 <= value <= 1.0:
            raise DomainError(f"Word {label} must lie in [0, 1], got {value}")
        symbols.append(float(value))
    return tuple(symbols)
