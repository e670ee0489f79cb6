"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def adjacent_equal_counts(seqs):
    seqs = np.asarray(seqs)
    if seqs.shape[1] < 2:
        return np.zeros(seqs.shape[0], dtype=np.int64)
    return (seqs[:, 1:] == seqs[:, :-1]).sum(axis=1).astype(np.int64)


def h2_batch(perms, u, v):
    perms = np.asarray(perms, dtype=np.int64)
    d = perms[:, u] - perms[:, v]
    return (d * d).sum(axis=1).astype(np.int64)


def null_flip_histogram(n, k, chunk=1 << 20):
    """Histogram of equal-adjacent counts over all k**n label sequences.

    Same first-label pinning as the compiled kernel; the remaining n-1
    digits are enumerated in mixed-radix chunks.
    """
    hist = np.zeros(max(n, 1), dtype=np.int64)
    if n == 1:
        hist[0] = k
        return hist
    total = k ** (n - 1)
    powers = k ** np.arange(n - 2, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        seqs = np.zeros((idx.size, n), dtype=np.int64)
        seqs[:, 1:] = (idx[:, None] // powers[None, :]) % k
        hist += np.bincount(adjacent_equal_counts(seqs), minlength=n)[:n]
    return hist * k


def lloyd(x, centers, max_iter, tol):
    n, k = x.shape[0], centers.shape[0]
    history = []
    it = 0
    labels = np.zeros(n, dtype=np.int64)
    while it < max_iter:
        it += 1
        d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = np.argmin(d2, axis=1).astype(np.int64)
        mind = d2[np.arange(n), labels]
        counts = np.bincount(labels, minlength=k)
        for j in range(k):
            if counts[j] == 0:
                eligible = counts[labels] > 1
                if not eligible.any():
                    raise RuntimeError("cannot reseed an empty cluster")
                far = int(np.argmax(np.where(eligible, mind, -1.0)))
                counts[labels[far]] -= 1
                labels[far] = j
                counts[j] = 1
                mind[far] = 0.0
        new = np.empty_like(centers)
        for f in range(x.shape[1]):
            new[:, f] = np.bincount(labels, weights=x[:, f], minlength=k) / counts
        shift = np.sqrt(((new - centers) ** 2).sum(axis=1)).max()
        centers[:] = new
        history.append(float(((x - centers[labels]) ** 2).sum()))
        if shift <= tol:
            break
    return labels, it, history
