"""Exception types raised across the package."""


class CoxbridgeError(Exception):
    pass


# knot-code ingestion
class KnotCodeError(CoxbridgeError, ValueError):
    pass


class MalformedToken(KnotCodeError):
    pass


class ZeroEntry(KnotCodeError):
    pass


class UnpairedCrossing(KnotCodeError):
    pass


class InvalidPairing(KnotCodeError):
    pass


class PositionClash(KnotCodeError):
    pass


# wirtinger / fox
class NotFound(CoxbridgeError):
    def __init__(self, k_max: int):
        super().__init__(f"no generating seed set of size <= {k_max}")
        self.k_max = k_max


class NoOddPrimeDivisor(CoxbridgeError):
    pass


# groups
class UnsupportedLabel(CoxbridgeError, ValueError):
    pass


class OrderOverflow(CoxbridgeError):
    pass


class MultipleClasses(CoxbridgeError):
    pass


# robust-set persistence
class RobustFileError(CoxbridgeError):
    pass


class HashMismatch(RobustFileError):
    pass


class SchemaVersionMismatch(RobustFileError):
    pass


class GroupMismatch(RobustFileError):
    pass


# search
class NotAReflection(CoxbridgeError):
    pass


class RankMismatch(CoxbridgeError):
    pass


class OmegaOutOfRange(CoxbridgeError):
    pass
