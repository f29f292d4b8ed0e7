"""Domain exceptions shared across the toolkit.

Everything raised on bad data derives from ForgeError so the CLI can map
domain failures to exit code 1 while genuine bugs still propagate.
"""


class ForgeError(Exception):
    """Base class for all domain errors."""


class MalformedPrefix(ForgeError):
    """Line does not start with a well-formed bracketed control prefix."""


class UnknownLabel(ForgeError):
    """A label string is not a member of its enumeration (nor an alias)."""

    def __init__(self, token: str, kind: str = "label"):
        self.token = token
        self.kind = kind
        super().__init__(f"unknown {kind}: {token!r}")


class SchemaViolation(ForgeError):
    """A serialized record line failed validation in strict mode."""

    def __init__(self, line_no: int, field: str, message: str = ""):
        self.line_no = line_no
        self.field = field
        detail = f": {message}" if message else ""
        super().__init__(f"line {line_no}: bad field {field!r}{detail}")


class LexiconFormatError(ForgeError):
    """Lexicon file violated one or more invariants.

    Carries every violation found, not just the first.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__(
            "invalid lexicon (%d problem%s):\n  %s"
            % (len(self.violations), "s" if len(self.violations) != 1 else "",
               "\n  ".join(self.violations))
        )


class DuplicateRuleId(LexiconFormatError):
    """Two lexicon entries share a rule_id."""

    def __init__(self, rule_id: str, violations: list[str]):
        self.rule_id = rule_id
        super().__init__(violations)


class EmptyPool(ForgeError):
    """Augmentation was asked to run on an empty source pool."""


class MissingClass(ForgeError):
    """Balancing requested a region class with zero rows."""

    def __init__(self, region_label: str):
        self.region_label = region_label
        super().__init__(f"no rows for region class {region_label!r}")


class EmptyEvalSet(ForgeError):
    """A metric was asked to score an empty set of pairs."""


class UnparseableAudit(ForgeError):
    """An audit response contained no usable 1..5 score."""
