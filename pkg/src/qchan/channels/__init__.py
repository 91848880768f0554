from .families import (
    FAMILIES,
    PAULI,
    Contraction,
    Depolarizing,
    Diagonal,
    DoublyDepolarizing,
    FamilySpec,
    Generalized,
    Qutrit,
    Successive,
    Weyl,
    build,
    build_contraction,
    build_depolarizing,
    build_diagonal,
    build_doubly_depolarizing,
    build_generalized,
    build_qutrit,
    build_successive,
    build_weyl_channel,
    family_unitaries,
    qutrit_basis,
    spec_from_dict,
    spec_to_dict,
    weyl_operators,
)
from .kraus import (
    KrausChannel,
    adjoint_apply,
    apply,
    check_covariance,
    choi_matrix,
    common_eigenvectors,
    identity_channel,
    tensor,
)
from .qubit import QubitUnitalParams, qubit_lambdas
