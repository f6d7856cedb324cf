"""Dense symmetric eigensolver used by the variational and grid methods."""

import numpy as np
import scipy.linalg


def sym_eigen(m, k, vectors=False):
    """k smallest eigenvalues (ascending) of a dense symmetric matrix.

    Parameters
    ----------
    m : (d, d) array_like, symmetric
    k : int, 1 <= k <= d
    vectors : bool
        Also return the matching eigenvectors as columns.
    """
    m = np.asarray(m, dtype=float)
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("matrix must be square")
    if not (1 <= k <= d):
        raise ValueError("need 1 <= k <= d")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix must be exactly symmetric")
    if vectors:
        w, v = scipy.linalg.eigh(m, subset_by_index=(0, k - 1))
        return w, v
    w = scipy.linalg.eigh(m, eigvals_only=True, subset_by_index=(0, k - 1))
    return w
