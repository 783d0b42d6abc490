"""Exception hierarchy."""


class VanillaError(Exception):
    pass


class CalculusMismatch(VanillaError):
    pass


class NotAValue(VanillaError, ValueError):
    def __init__(self, msg="substituted term must be a value"):
        super().__init__(msg)


class ParseError(VanillaError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# -- typing ------------------------------------------------------------------


class TypingError(VanillaError):
    pass


class UnboundVariable(TypingError):
    def __init__(self, var, position=()):
        super().__init__(f"unbound variable {var}")
        self.var = var
        self.position = tuple(position)


class TypeMismatch(TypingError):
    def __init__(self, expected, found, position=(), message=None):
        msg = message or f"expected {expected}, found {found}"
        super().__init__(msg)
        self.expected = expected
        self.found = found
        self.position = tuple(position)


class UnificationClash(TypeMismatch):
    pass


class OccursCheck(TypeMismatch):
    def __init__(self, expected, found, position=()):
        super().__init__(expected, found, position,
                         f"occurs check: cannot unify {expected} with {found}")


class NotAFunction(TypeMismatch):
    def __init__(self, found, position=()):
        super().__init__("an implication", found, position, f"not a function: has type {found}")


class HeadNotImplication(TypingError):
    def __init__(self, head, found, position=()):
        super().__init__(f"subtraction head {head} has non-implicative type {found}")
        self.head = head
        self.found = found
        self.position = tuple(position)


class ContractionConflict(TypingError):
    def __init__(self, var, bound, new):
        super().__init__(f"{var} is already bound to {bound}, cannot also bind it to {new}")
        self.var = var
        self.bound = bound
        self.new = new


# -- rewriting and checks ----------------------------------------------------


class StaleRedex(VanillaError):
    pass


class SimulationFailure(VanillaError):
    def __init__(self, message, expected=None, reached=None):
        super().__init__(message)
        self.expected = expected
        self.reached = reached


class ResidualCut(VanillaError):
    def __init__(self, term, steps):
        super().__init__(f"non-renaming cuts remain after {steps} renaming steps")
        self.term = term
        self.steps = steps


class DiagramFailure(VanillaError):
    pass


class GenerationExhausted(VanillaError):
    pass


class InvalidDerivation(TypingError):
    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node
