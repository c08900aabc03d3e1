"""Exception hierarchy shared by the library and the CLI exit-code contract."""


class NetCtrlError(Exception):
    exit_code = 1


class InputError(NetCtrlError, ValueError):
    """Malformed graph, unknown node, violated precondition on user input."""

    exit_code = 2


class InfeasibleError(NetCtrlError, RuntimeError):
    """Analysis cannot be carried out: enumeration bounds, singular blocks, iteration caps."""

    exit_code = 3
