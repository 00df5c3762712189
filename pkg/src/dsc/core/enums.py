# src/dsc/core/enums.py

from enum import StrEnum


class SymbolClass(StrEnum):
    G0 = "G0"
    G_GE1 = "Gge1"
    UNTAGGED = "untagged"


class SpaceKind(StrEnum):
    BERGMAN = "bergman"
    HARDY = "hardy"
    DIRICHLET = "dirichlet"


class JessenMode(StrEnum):
    VERTICAL = "vertical"
    MONTECARLO = "montecarlo"


class Verdict(StrEnum):
    BOUNDED = "bounded"
    VANISHING = "vanishing"
    GROWING = "growing"
    INCONCLUSIVE = "inconclusive"


class NevanlinnaKind(StrEnum):
    GENERALIZED = "generalized"
    CLASSICAL = "classical"


class ExperimentKind(StrEnum):
    COUNT = "count"
    JESSEN = "jessen"
    IDENTITY3 = "identity3"
    IDENTITY24 = "identity24"
    POLYTORUS = "polytorus"
    STANTON = "stanton"
    KERNEL = "kernel"
    SCHWARZ = "schwarz"
    LITTLEWOOD = "littlewood"
    RATIO = "ratio"
    SUBMEAN = "submean"
    TRANSFER = "transfer"


class LogLevel(StrEnum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"
    DEBUG = "debug"
