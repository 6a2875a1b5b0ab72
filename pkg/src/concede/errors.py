"""Exception hierarchy shared by all pipeline stages."""


class ConcedeError(Exception):
    """Base class for every error raised by the package."""


class ParseError(ConcedeError):
    """A data file or scenario document is malformed.

    ``position`` is a 1-based line number when one is known.
    """

    def __init__(self, message, position=None, source=None):
        self.position = position
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}"
        if position is not None:
            where += f"{':' if where else 'line '}{position}"
        super().__init__(f"{where}: {message}" if where else message)


class InvariantError(ConcedeError):
    """Loaded data violates a structural invariant."""


class ScenarioReferenceError(ConcedeError):
    """A scenario refers to an id that is not declared."""

    def __init__(self, ref):
        self.ref = ref
        super().__init__(f"dangling reference: {ref}")


class UnmappableGoalConfig(ConcedeError):
    """Goals and presuppositions match no known concession schema."""


class UnsupportedTree(ConcedeError):
    """A discourse tree has a shape the linearizer has no rule for."""


class NoCandidate(ConcedeError):
    """No lexicon entry survives the feature filter."""


class InvalidFeatureCombination(ConcedeError):
    """The choice network refuses the requested feature combination."""


class MissingClauseForm(ConcedeError):
    def __init__(self, prop, language, variant):
        self.prop = prop
        self.language = language
        self.variant = variant
        super().__init__(
            f"proposition {prop} has no {variant} clause form for {language!r}")


class PipelineError(ConcedeError):
    """Wraps an upstream failure with the stage it happened in."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")
