"""Exception hierarchy shared by every engine module."""


class CogmathError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ScenarioFormatError(CogmathError):
    """Malformed scenario file (CLI exit code 2)."""


# knowledge
class AmbiguousClassification(CogmathError):
    def __init__(self, object_id, species):
        self.object_id = object_id
        self.species = tuple(species)
        super().__init__(
            f"object {object_id!r} matches several templates: {', '.join(self.species)}"
        )


class DuplicateTemplate(CogmathError):
    pass


# logic
class Contradiction(CogmathError):
    def __init__(self, concept):
        self.concept = concept
        super().__init__(f"both polarities derived for {concept}")


class MissingObservation(CogmathError):
    def __init__(self, subject, target, tick):
        self.subject, self.target, self.tick = subject, target, tick
        super().__init__(f"no distance reading for ({subject}, {target}) at tick {tick}")


# order
class NotTotallyOrdered(CogmathError):
    pass


class EquivalentElementsPresent(CogmathError):
    pass


class NotWellOrdered(CogmathError):
    pass


class OutOfRange(CogmathError):
    pass


# counting
class SizeBeyondVocabulary(CogmathError):
    pass


class AlreadyConverged(CogmathError):
    pass


# markov
class NotStochastic(CogmathError):
    def __init__(self, row, total):
        self.row, self.total = row, total
        super().__init__(f"row {row} sums to {total!r}")


class NegativeEntry(CogmathError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"negative transition probability at ({i}, {j})")


class ShapeMismatch(CogmathError):
    pass


class NotIrreducible(CogmathError):
    def __init__(self, n_classes):
        self.n_classes = n_classes
        super().__init__(f"chain is not irreducible ({n_classes} communicating classes)")


class Periodic(CogmathError):
    def __init__(self, period):
        self.period = period
        super().__init__(f"chain is periodic with period {period}")


class ConvergenceError(CogmathError):
    pass
