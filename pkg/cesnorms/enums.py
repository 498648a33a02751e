import enum


class OpKind(enum.Enum):
    C = "C"
    CSTAR = "Cstar"
    CMINUS_I = "CminusI"
    CSTAR_MINUS_I = "CstarMinusI"
    CMINUS_SSTAR = "CminusSstar"
    CSTAR_SD = "CstarSD"
    S = "S"
    SSTAR = "Sstar"
    D = "D"
    E = "E"
    I = "I"


PRINCIPAL_OPS = (
    OpKind.C,
    OpKind.CSTAR,
    OpKind.CMINUS_I,
    OpKind.CSTAR_MINUS_I,
    OpKind.CMINUS_SSTAR,
    OpKind.CSTAR_SD
)

OP_CLI_NAMES = {
    OpKind.C: "cesaro",
    OpKind.CSTAR: "copson",
    OpKind.CMINUS_I: "cesaro-minus-identity",
    OpKind.CSTAR_MINUS_I: "copson-minus-identity",
    OpKind.CMINUS_SSTAR: "cesaro-minus-shift",
    OpKind.CSTAR_SD: "copson-shift-diagonal",
    OpKind.S: "shift",
    OpKind.SSTAR: "backward-shift",
    OpKind.D: "diagonal",
    OpKind.E: "summation",
    OpKind.I: "identity"
}

assert set(OP_CLI_NAMES.keys()) == set(OpKind)


class Cone(enum.Enum):
    ALL = "All"
    NONNEG = "Nonneg"
    NONINCR = "Nonincr"
    NONDECR = "Nondecr"


CONE_CLI_NAMES = {
    Cone.ALL: "all",
    Cone.NONNEG: "nonneg",
    Cone.NONINCR: "nonincr",
    Cone.NONDECR: "nondecr"
}

assert set(CONE_CLI_NAMES.keys()) == set(Cone)


class Status(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    TRUNCATED_CONVERGED = "TruncatedConverged"
    TRUNCATED_LOWER_BOUND = "TruncatedLowerBound"
    DIVERGENT = "Divergent"
    UNSUPPORTED = "Unsupported"


class RowPattern(enum.Enum):
    POS_BEFORE_NEG = "PosBeforeNeg"
    NEG_BEFORE_POS = "NegBeforePos"
    MIXED = "Mixed"
    ALL_ZERO = "AllZero"


class WeightKind(enum.Enum):
    POWER = "power"
    LIST = "list"


class Direction(enum.Enum):
    C_LE_CSTAR = "C_le_Cstar"
    CSTAR_LE_C = "Cstar_le_C"


DIRECTION_CLI_NAMES = {
    Direction.C_LE_CSTAR: "c-le-cstar",
    Direction.CSTAR_LE_C: "cstar-le-c"
}

assert set(DIRECTION_CLI_NAMES.keys()) == set(Direction)


class PowerTheorem(enum.Enum):
    CESARO = "cesaro"
    COPSON = "copson"
    CESARO_MINUS_IDENTITY = "cesaro-minus-identity"
    COPSON_MINUS_IDENTITY = "copson-minus-identity"
    CC_STAR = "c-le-cstar"
    CSTAR_C = "cstar-le-c"


POWER_THEOREM_CONES = {
    PowerTheorem.CESARO: tuple(Cone),
    PowerTheorem.COPSON: tuple(Cone),
    PowerTheorem.CESARO_MINUS_IDENTITY: tuple(Cone),
    PowerTheorem.COPSON_MINUS_IDENTITY: (Cone.ALL, Cone.NONNEG, Cone.NONDECR),
    PowerTheorem.CC_STAR: (Cone.ALL, Cone.NONNEG),
    PowerTheorem.CSTAR_C: (Cone.ALL, Cone.NONNEG)
}

assert set(POWER_THEOREM_CONES.keys()) == set(PowerTheorem)


class Trend(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


class MonotoneFact(enum.Enum):
    CESARO_AVERAGE = "cesaro-average"
    STRICT_CESARO_AVERAGE = "strict-cesaro-average"
    COPSON_TAIL = "copson-tail"
    STRICT_COPSON_TAIL = "strict-copson-tail"
    SHIFTED_TAIL = "shifted-tail"


class VerifySuite(enum.Enum):
    IDENTITIES = "identities"
    POWER_CONSISTENCY = "power-consistency"
    ORACLE = "oracle"
    MONOTONICITY = "monotonicity"
    WITNESS = "witness"
    ALL = "all"
