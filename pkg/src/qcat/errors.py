"""Exception hierarchy shared by every module."""


class QCatError(Exception):
    """Base class for all library errors."""


class BadPermutation(QCatError, ValueError):
    pass


class NotInImage(QCatError):
    """A morphism does not factor through a mono (or epi).

    ``witness`` is the first offending basis index of the map being factored.
    """

    def __init__(self, witness, message="morphism does not factor"):
        super().__init__(f"{message} (witness: {witness!r})")
        self.witness = witness


class DoesNotEqualize(NotInImage):
    def __init__(self, witness, message="morphism does not equalize the pair"):
        super().__init__(witness, message)


class BackendMismatch(QCatError, TypeError):
    pass


class ShapeMismatch(QCatError, ValueError):
    pass


class EndpointMismatch(QCatError, ValueError):
    pass


class LawViolation(QCatError):
    """A structure fails one of its defining laws; ``witness`` says where."""

    def __init__(self, law: str, witness=None):
        detail = f" at {witness}" if witness is not None else ""
        super().__init__(f"{law} fails{detail}")
        self.law = law
        self.witness = witness


class SideConditionFailed(LawViolation):
    pass


class InvalidGraph(LawViolation):
    pass


class CoactionDoesNotRestrict(LawViolation):
    pass


class Axiom2Violated(LawViolation):
    pass


class NgrDisagreement(LawViolation):
    pass


class ComparisonNotInvertible(QCatError):
    pass


class InvalidCategory(LawViolation):
    pass


class AxiomsFail(QCatError):
    def __init__(self, report):
        super().__init__("input does not satisfy the quantum category axioms:\n" + report.to_text())
        self.report = report


class InvalidComponentData(LawViolation):
    pass


class DocumentError(QCatError):
    """A serialized document is malformed; ``field`` names the offending path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
