from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds. All are relative.

    krylov    Arnoldi breakdown on -L, relative to the infinity norm of L;
              decides rank(Q) and hence controllability.
    rows      singular-value ratio of the selected rows of the (orthonormal)
              controllability basis; decides the row criterion.
    grammian  singular-value ratio of the Grammian principal block. It is
              evaluated through a square-root factor, which resolves ratios
              down to roughly eps**2, hence the small default.
    """

    krylov: float = 1e-10
    rows: float = 1e-10
    grammian: float = 1e-26


DEFAULT_TOL = Tolerances()

# enumeration bounds
NF_MAX_NODES = 14
SNF_SYNTH_MAX_NODES = 12
MAX_HALVINGS = 60
MAX_GROUP_SUBSETS = 5000
DEFAULT_SEED = 42
