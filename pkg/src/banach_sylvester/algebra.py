"""Concrete commutative unital semisimple Banach algebras.

Three algebras are supported, each with an explicit maximal ideal space:

``Scalar``
    The complex numbers; the maximal ideal space is a single point.
``Wiener``
    Band-limited elements of the Wiener algebra W(T), i.e. trigonometric
    polynomials ``x(theta) = sum_{|k| <= W} c_k e^{i k theta}``. Characters
    are point evaluations on the circle, sampled at ``theta_j = 2 pi j / N``.
``SampledCK``
    C(K) for a finite set K of ``grid_size`` points; elements are sample
    vectors and arithmetic is pointwise.

Elements and matrices store a payload array along their last axis: one
value (Scalar), the coefficients ``c_{-W}, ..., c_W`` (Wiener), or the
samples (SampledCK).
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_complex_matrix, check_positive_int
from .exceptions import (
    BandwidthOverflow,
    DescriptorMismatch,
    IndexOutOfRange,
    InsufficientGrid,
    ShapeMismatch,
)

MIN_WIENER_GRID = 8


class AlgebraKind(str, enum.Enum):
    SCALAR = "Scalar"
    WIENER = "Wiener"
    SAMPLED_CK = "SampledCK"


def next_power_of_two(n):
    return 1 << max(0, int(n) - 1).bit_length()


def default_wiener_grid(bandwidth):
    """Smallest power of two >= 4 * bandwidth + 1 (at least 8)."""
    return max(MIN_WIENER_GRID, next_power_of_two(4 * bandwidth + 1))


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Which algebra, the size of its sampled maximal ideal space, and the band.

    For Wiener elements ``grid_size`` is the number N of evaluation points on
    the circle and ``bandwidth`` the largest stored ``|k|``; ``N >= 2W + 1``
    is required so that band-limited data survive a sample/reconstruct round
    trip.
    """

    kind: AlgebraKind
    grid_size: int = 1
    bandwidth: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", AlgebraKind(self.kind))
        check_positive_int(self.grid_size, "grid_size")
        check_positive_int(self.bandwidth, "bandwidth", minimum=0)
        if self.kind is AlgebraKind.SCALAR:
            if self.grid_size != 1 or self.bandwidth != 0:
                raise ValueError("Scalar descriptor has grid_size 1 and bandwidth 0")
        elif self.kind is AlgebraKind.WIENER:
            if self.grid_size < 2 * self.bandwidth + 1:
                raise InsufficientGrid(
                    f"Wiener grid {self.grid_size} < 2*{self.bandwidth}+1"
                )
        elif self.bandwidth != 0:
            raise ValueError("SampledCK descriptor has no bandwidth")

    @classmethod
    def scalar(cls):
        return cls(AlgebraKind.SCALAR)

    @classmethod
    def wiener(cls, bandwidth, grid_size=None):
        if grid_size is None:
            grid_size = default_wiener_grid(bandwidth)
        return cls(AlgebraKind.WIENER, grid_size, bandwidth)

    @classmethod
    def sampled(cls, grid_size):
        return cls(AlgebraKind.SAMPLED_CK, grid_size, 0)

    @property
    def payload_length(self):
        if self.kind is AlgebraKind.WIENER:
            return 2 * self.bandwidth + 1
        return self.grid_size

    def widen(self, bandwidth):
        """Wiener descriptor with at least ``bandwidth`` capacity (grid grown if needed)."""
        if self.kind is not AlgebraKind.WIENER or bandwidth <= self.bandwidth:
            return self
        grid = self.grid_size
        if grid < 2 * bandwidth + 1:
            grid = next_power_of_two(2 * bandwidth + 1)
        return AlgebraDescriptor(AlgebraKind.WIENER, grid, bandwidth)

    def unify(self, other):
        """Common descriptor for combining elements of ``self`` and ``other``.

        Wiener descriptors of different capacity unify to the larger one;
        any other difference raises :class:`DescriptorMismatch`.
        """
        if self == other:
            return self
        if self.kind is AlgebraKind.WIENER and other.kind is AlgebraKind.WIENER:
            return AlgebraDescriptor(
                AlgebraKind.WIENER,
                max(self.grid_size, other.grid_size),
                max(self.bandwidth, other.bandwidth),
            )
        raise DescriptorMismatch(f"{self} is incompatible with {other}")


def _resize_payload(payload, old, new):
    """Re-embed payload arrays (last axis) from descriptor ``old`` into ``new``."""
    if old == new or new.kind is not AlgebraKind.WIENER:
        return payload
    pad = new.bandwidth - old.bandwidth
    if pad < 0:
        raise BandwidthOverflow("cannot shrink a Wiener payload")
    widths = [(0, 0)] * (payload.ndim - 1) + [(pad, pad)]
    return np.pad(payload, widths)


def _effective_bandwidth(payload, descriptor):
    if descriptor.kind is not AlgebraKind.WIENER:
        return 0
    w = descriptor.bandwidth
    flat = payload.reshape(-1, 2 * w + 1)
    nz = np.flatnonzero(np.any(flat != 0, axis=0))
    if nz.size == 0:
        return 0
    return int(max(abs(nz[0] - w), abs(nz[-1] - w)))


def _phase_matrix(bandwidth, grid_size):
    """``E[k + W, j] = exp(2 pi i k j / N)``, phases reduced mod N for accuracy."""
    k = np.arange(-bandwidth, bandwidth + 1)
    j = np.arange(grid_size)
    return np.exp(2j * np.pi * (np.outer(k, j) % grid_size) / grid_size)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """One element of the algebra described by ``descriptor``."""

    descriptor: AlgebraDescriptor
    payload: np.ndarray = field(repr=False)

    def __post_init__(self):
        payload = np.asarray(self.payload, dtype=np.complex128).reshape(-1)
        if payload.size != self.descriptor.payload_length:
            raise ShapeMismatch(
                f"payload length {payload.size} != {self.descriptor.payload_length}"
            )
        if not np.all(np.isfinite(payload)):
            raise ValueError("algebra element contains NaN or Inf")
        payload.setflags(write=False)
        object.__setattr__(self, "payload", payload)

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, value, descriptor):
        """``value * e`` where ``e`` is the unit of the algebra."""
        payload = np.zeros(descriptor.payload_length, dtype=np.complex128)
        if descriptor.kind is AlgebraKind.WIENER:
            payload[descriptor.bandwidth] = value
        else:
            payload[:] = value
        return cls(descriptor, payload)

    @classmethod
    def unit(cls, descriptor):
        return cls.constant(1.0, descriptor)

    @classmethod
    def zero(cls, descriptor):
        return cls.constant(0.0, descriptor)

    @classmethod
    def monomial(cls, k, descriptor, value=1.0):
        """Wiener element ``value * e^{i k theta}``."""
        if descriptor.kind is not AlgebraKind.WIENER:
            raise DescriptorMismatch("monomials live in the Wiener algebra")
        if abs(k) > descriptor.bandwidth:
            raise BandwidthOverflow(f"|k| = {abs(k)} exceeds bandwidth {descriptor.bandwidth}")
        payload = np.zeros(descriptor.payload_length, dtype=np.complex128)
        payload[k + descriptor.bandwidth] = value
        return cls(descriptor, payload)

    @classmethod
    def from_coefficients(cls, coefficients, descriptor=None):
        """Wiener element from a mapping ``{k: c_k}``."""
        if descriptor is None:
            bw = max((abs(int(k)) for k in coefficients), default=0)
            descriptor = AlgebraDescriptor.wiener(bw)
        if descriptor.kind is not AlgebraKind.WIENER:
            raise DescriptorMismatch("coefficient maps describe Wiener elements")
        payload = np.zeros(descriptor.payload_length, dtype=np.complex128)
        for k, ck in coefficients.items():
            k = int(k)
            if abs(k) > descriptor.bandwidth:
                raise BandwidthOverflow(
                    f"|k| = {abs(k)} exceeds bandwidth {descriptor.bandwidth}"
                )
            payload[k + descriptor.bandwidth] = ck
        return cls(descriptor, payload)

    # accessors ----------------------------------------------------------
    @property
    def effective_bandwidth(self):
        return _effective_bandwidth(self.payload, self.descriptor)

    def coefficient(self, k):
        if self.descriptor.kind is not AlgebraKind.WIENER:
            raise DescriptorMismatch("only Wiener elements have Fourier coefficients")
        w = self.descriptor.bandwidth
        return complex(self.payload[k + w]) if abs(k) <= w else 0j

    def coefficients(self):
        """Nonzero Wiener coefficients as ``{k: c_k}``."""
        w = self.descriptor.bandwidth
        return {
            int(i - w): complex(c) for i, c in enumerate(self.payload) if c != 0
        }

    def widen(self, bandwidth):
        desc = self.descriptor.widen(bandwidth)
        return AlgebraElement(desc, _resize_payload(self.payload, self.descriptor, desc))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        return alg_add(self, other)

    def __sub__(self, other):
        return alg_add(self, -other)

    def __neg__(self):
        return AlgebraElement(self.descriptor, -self.payload)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        return AlgebraElement(self.descriptor, self.payload * complex(other))

    def __rmul__(self, other):
        return AlgebraElement(self.descriptor, self.payload * complex(other))

    def __repr__(self):
        d = self.descriptor
        if d.kind is AlgebraKind.WIENER:
            return f"AlgebraElement(Wiener, {self.coefficients()})"
        if d.kind is AlgebraKind.SCALAR:
            return f"AlgebraElement(Scalar, {complex(self.payload[0])})"
        return f"AlgebraElement(SampledCK, {self.payload.tolist()})"


def _check_product_band(ea, eb, capacity):
    if ea + eb > capacity:
        raise BandwidthOverflow(
            f"product bandwidth {ea} + {eb} exceeds capacity {capacity}; widen first"
        )


def alg_add(x, y):
    desc = x.descriptor.unify(y.descriptor)
    px = _resize_payload(x.payload, x.descriptor, desc)
    py = _resize_payload(y.payload, y.descriptor, desc)
    return AlgebraElement(desc, px + py)


def alg_mul(x, y):
    """Product in the algebra: Laurent convolution (Wiener) or pointwise.

    Raises
    ------
    BandwidthOverflow
        If the effective bandwidths of the factors add up to more than the
        common capacity.
    """
    desc = x.descriptor.unify(y.descriptor)
    if desc.kind is not AlgebraKind.WIENER:
        return AlgebraElement(desc, x.payload * y.payload)
    out = matmul(
        AlgebraMatrix(x.descriptor, x.payload.reshape(1, 1, -1)),
        AlgebraMatrix(y.descriptor, y.payload.reshape(1, 1, -1)),
    )
    return out[0, 0]


@dataclass(frozen=True, eq=False)
class AlgebraMatrix:
    """Dense matrix over one algebra; ``data`` has shape (rows, cols, payload)."""

    descriptor: AlgebraDescriptor
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.complex128)
        if data.ndim != 3 or data.shape[2] != self.descriptor.payload_length:
            raise ShapeMismatch(
                f"data shape {data.shape} incompatible with payload length "
                f"{self.descriptor.payload_length}"
            )
        if data.shape[0] == 0 or data.shape[1] == 0:
            raise ShapeMismatch("algebra matrices must be non-empty")
        if not np.all(np.isfinite(data)):
            raise ValueError("algebra matrix contains NaN or Inf")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, matrix, descriptor):
        """Scalar-embedded matrix ``C0 * e``; its transform is C0 everywhere."""
        c0 = as_complex_matrix(matrix)
        data = np.zeros(c0.shape + (descriptor.payload_length,), dtype=np.complex128)
        if descriptor.kind is AlgebraKind.WIENER:
            data[:, :, descriptor.bandwidth] = c0
        else:
            data[:] = c0[:, :, None]
        return cls(descriptor, data)

    @classmethod
    def zeros(cls, rows, cols, descriptor):
        return cls(descriptor, np.zeros((rows, cols, descriptor.payload_length), complex))

    @classmethod
    def identity(cls, n, descriptor):
        return cls.constant(np.eye(n), descriptor)

    @classmethod
    def from_elements(cls, rows):
        """Build from a nested list of :class:`AlgebraElement`."""
        flat = [e for row in rows for e in row]
        if not flat or any(len(row) != len(rows[0]) for row in rows):
            raise ShapeMismatch("rows must be non-empty and of equal length")
        desc = flat[0].descriptor
        for e in flat[1:]:
            desc = desc.unify(e.descriptor)
        data = np.array(
            [[_resize_payload(e.payload, e.descriptor, desc) for e in row] for row in rows]
        )
        return cls(desc, data)

    @classmethod
    def from_coefficients(cls, coefficients, descriptor=None):
        """Wiener matrix from ``{k: C_k}`` with complex matrices ``C_k``."""
        mats = {int(k): as_complex_matrix(v) for k, v in coefficients.items()}
        shape = next(iter(mats.values())).shape
        if descriptor is None:
            descriptor = AlgebraDescriptor.wiener(max(abs(k) for k in mats))
        if descriptor.kind is not AlgebraKind.WIENER:
            raise DescriptorMismatch("coefficient maps describe Wiener matrices")
        w = descriptor.bandwidth
        data = np.zeros(shape + (2 * w + 1,), dtype=np.complex128)
        for k, ck in mats.items():
            if abs(k) > w:
                raise BandwidthOverflow(f"|k| = {abs(k)} exceeds bandwidth {w}")
            if ck.shape != shape:
                raise ShapeMismatch("coefficient matrices differ in shape")
            data[:, :, k + w] = ck
        return cls(descriptor, data)

    @classmethod
    def block(cls, blocks):
        """Assemble a block matrix from a nested list of AlgebraMatrix."""
        desc = blocks[0][0].descriptor
        for row in blocks:
            for blk in row:
                desc = desc.unify(blk.descriptor)
        rows = [
            np.concatenate([_resize_payload(b.data, b.descriptor, desc) for b in row], axis=1)
            for row in blocks
        ]
        return cls(desc, np.concatenate(rows, axis=0))

    # accessors ----------------------------------------------------------
    @property
    def shape(self):
        return self.data.shape[:2]

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def effective_bandwidth(self):
        return _effective_bandwidth(self.data, self.descriptor)

    def __getitem__(self, index):
        i, j = index
        if isinstance(i, slice) or isinstance(j, slice):
            i = i if isinstance(i, slice) else slice(i, i + 1)
            j = j if isinstance(j, slice) else slice(j, j + 1)
            return AlgebraMatrix(self.descriptor, self.data[i, j])
        return AlgebraElement(self.descriptor, self.data[i, j])

    def coefficient(self, k):
        """Complex matrix of k-th Fourier coefficients (Wiener only)."""
        if self.descriptor.kind is not AlgebraKind.WIENER:
            raise DescriptorMismatch("only Wiener matrices have Fourier coefficients")
        w = self.descriptor.bandwidth
        if abs(k) > w:
            return np.zeros(self.shape, dtype=np.complex128)
        return self.data[:, :, k + w].copy()

    def widen(self, bandwidth):
        desc = self.descriptor.widen(bandwidth)
        return AlgebraMatrix(desc, _resize_payload(self.data, self.descriptor, desc))

    def with_descriptor(self, descriptor):
        """Re-embed into a compatible, at least as wide, descriptor."""
        desc = self.descriptor.unify(descriptor)
        if desc != descriptor:
            raise DescriptorMismatch(f"{self.descriptor} does not fit in {descriptor}")
        return AlgebraMatrix(desc, _resize_payload(self.data, self.descriptor, desc))

    # arithmetic ---------------------------------------------------------
    def _binary(self, other, op):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} and {other.shape} differ")
        desc = self.descriptor.unify(other.descriptor)
        a = _resize_payload(self.data, self.descriptor, desc)
        b = _resize_payload(other.data, other.descriptor, desc)
        return AlgebraMatrix(desc, op(a, b))

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __neg__(self):
        return AlgebraMatrix(self.descriptor, -self.data)

    def __mul__(self, scalar):
        return AlgebraMatrix(self.descriptor, self.data * complex(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other):
        return matmul(self, other)

    def __repr__(self):
        return f"AlgebraMatrix({self.descriptor.kind.value}, shape={self.shape})"


def matmul(m, n, widen=False):
    """Matrix product in algebra arithmetic.

    With ``widen=True`` the result capacity grows to hold the full product
    bandwidth; otherwise a product exceeding the common capacity raises
    :class:`BandwidthOverflow`.
    """
    if m.cols != n.rows:
        raise ShapeMismatch(f"cannot multiply {m.shape} by {n.shape}")
    desc = m.descriptor.unify(n.descriptor)
    if desc.kind is not AlgebraKind.WIENER:
        return AlgebraMatrix(desc, np.einsum("ipl,pjl->ijl", m.data, n.data))
    ea, eb = m.effective_bandwidth, n.effective_bandwidth
    if widen:
        desc = desc.widen(ea + eb)
    _check_product_band(ea, eb, desc.bandwidth)
    wa, wb, w = m.descriptor.bandwidth, n.descriptor.bandwidth, desc.bandwidth
    a = m.data[:, :, wa - ea: wa + ea + 1]
    b = n.data[:, :, wb - eb: wb + eb + 1]
    out = np.zeros((m.rows, n.cols, 2 * w + 1), dtype=np.complex128)
    # coefficient i of a (index k = i - ea) shifts b's band by k
    off = w - ea - eb
    for i in range(2 * ea + 1):
        ai = a[:, :, i]
        if not np.any(ai):
            continue
        out[:, :, off + i: off + i + 2 * eb + 1] += np.einsum("ip,pjl->ijl", ai, b)
    return AlgebraMatrix(desc, out)


# Gelfand transform ------------------------------------------------------

def _as_matrix(x):
    if isinstance(x, AlgebraElement):
        return AlgebraMatrix(x.descriptor, x.payload.reshape(1, 1, -1))
    return x


def sample_matrix(m, grid_size=None):
    """Gelfand transform of every entry on the whole grid.

    Returns an array of shape ``(N, rows, cols)``; for Wiener matrices the
    grid is ``theta_j = 2 pi j / N`` with ``N = grid_size`` (default: the
    descriptor's). Scalar and SampledCK matrices ignore ``grid_size`` unless
    it disagrees with the descriptor.
    """
    m = _as_matrix(m)
    desc = m.descriptor
    if desc.kind is not AlgebraKind.WIENER:
        if grid_size is not None and grid_size != desc.grid_size:
            raise InsufficientGrid(
                f"{desc.kind.value} has exactly {desc.grid_size} characters, not {grid_size}"
            )
        return np.moveaxis(m.data, 2, 0).copy()
    n_pts = desc.grid_size if grid_size is None else grid_size
    check_positive_int(n_pts, "grid_size")
    vals = m.data @ _phase_matrix(desc.bandwidth, n_pts)
    return np.ascontiguousarray(np.moveaxis(vals, 2, 0))


def evaluate_at(m, thetas):
    """Wiener matrix evaluated at arbitrary angles; shape ``(len(thetas), rows, cols)``."""
    m = _as_matrix(m)
    if m.descriptor.kind is not AlgebraKind.WIENER:
        raise DescriptorMismatch("off-grid evaluation is defined for Wiener elements only")
    w = m.descriptor.bandwidth
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    e = np.exp(1j * np.outer(np.arange(-w, w + 1), thetas))
    return np.moveaxis(m.data @ e, 2, 0)


def _check_phi(descriptor, phi_index):
    if not 0 <= phi_index < descriptor.grid_size:
        raise IndexOutOfRange(
            f"phi_index {phi_index} outside [0, {descriptor.grid_size})"
        )


def gelfand_eval(x, phi_index):
    """Value of the character ``phi_index`` on the element ``x``."""
    _check_phi(x.descriptor, phi_index)
    return complex(gelfand_matrix(_as_matrix(x), phi_index)[0, 0])


def gelfand_matrix(m, phi_index):
    """Entrywise Gelfand transform of ``m`` at one grid point."""
    desc = m.descriptor
    _check_phi(desc, phi_index)
    if desc.kind is not AlgebraKind.WIENER:
        return m.data[:, :, phi_index].copy()
    k = np.arange(-desc.bandwidth, desc.bandwidth + 1)
    phases = np.exp(2j * np.pi * ((k * phi_index) % desc.grid_size) / desc.grid_size)
    return m.data @ phases


def raw_coefficients(samples):
    """All N discrete Fourier coefficients of samples on the uniform grid.

    Index ``k`` (``-N/2 <= k < N/2``) sits at position ``k mod N``, as in
    ``numpy.fft.fftfreq``.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    return np.fft.fft(samples, axis=0) / samples.shape[0]


def _band_from_raw(raw, bandwidth):
    n = raw.shape[0]
    idx = np.arange(-bandwidth, bandwidth + 1) % n
    return raw[idx]


def from_samples(samples, bandwidth):
    """Wiener element whose coefficients are the inverse DFT of ``samples``.

    Raises
    ------
    InsufficientGrid
        If ``len(samples) < 2 * bandwidth + 1``.
    """
    samples = np.asarray(samples, dtype=np.complex128).reshape(-1)
    n = samples.size
    if n < 2 * bandwidth + 1:
        raise InsufficientGrid(f"{n} samples cannot resolve bandwidth {bandwidth}")
    desc = AlgebraDescriptor.wiener(bandwidth, grid_size=n)
    return AlgebraElement(desc, _band_from_raw(raw_coefficients(samples), bandwidth))


def matrix_from_samples(samples, bandwidth):
    """Entrywise :func:`from_samples` for samples of shape ``(N, rows, cols)``.

    Returns
    -------
    x : AlgebraMatrix
    tail_mass : float
        Sum over all entries of ``|c_k|`` for the raw coefficients with
        ``|k| > bandwidth`` that were dropped.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    n = samples.shape[0]
    if n < 2 * bandwidth + 1:
        raise InsufficientGrid(f"{n} samples cannot resolve bandwidth {bandwidth}")
    raw = raw_coefficients(samples)
    freqs = np.rint(np.fft.fftfreq(n) * n).astype(int)
    tail = float(np.sum(np.abs(raw[np.abs(freqs) > bandwidth])))
    band = np.moveaxis(_band_from_raw(raw, bandwidth), 0, 2)
    return AlgebraMatrix(AlgebraDescriptor.wiener(bandwidth, grid_size=n), band), tail


# norms --------------------------------------------------------------------

def wiener_norm(x):
    """Algebra norm: sum of |c_k| (Wiener), max |sample| (SampledCK), |x| (Scalar)."""
    if x.descriptor.kind is AlgebraKind.WIENER:
        return float(np.sum(np.abs(x.payload)))
    return float(np.max(np.abs(x.payload)))


def sup_norm(x, oversample_factor=2, grid_size=None):
    """Maximum modulus of the Gelfand transform.

    For Wiener elements it is evaluated on ``oversample_factor * N`` equally
    spaced points, where N is ``grid_size`` (default: the larger of the
    descriptor grid and ``2 * bandwidth + 1``).
    """
    return float(np.max(entry_sup_norms(_as_matrix(x), oversample_factor, grid_size)))


def entry_wiener_norms(m):
    if m.descriptor.kind is AlgebraKind.WIENER:
        return np.sum(np.abs(m.data), axis=2)
    return np.max(np.abs(m.data), axis=2)


def entry_sup_norms(m, oversample_factor=2, grid_size=None):
    if oversample_factor < 1:
        raise ValueError("oversample_factor must be >= 1")
    desc = m.descriptor
    if desc.kind is not AlgebraKind.WIENER:
        return np.max(np.abs(m.data), axis=2)
    if grid_size is None:
        grid_size = max(desc.grid_size, 2 * m.effective_bandwidth + 1)
    pts = int(np.ceil(oversample_factor * grid_size))
    return np.max(np.abs(sample_matrix(m, pts)), axis=0)


def residual_norms(a, b, c, x, oversample_factor=2):
    """Norms of ``AX - XB - C`` recomputed in algebra arithmetic.

    Returns ``(residual_wiener, residual_sup)``: the sum of the entries'
    algebra norms, and the largest entry sup-norm on a grid
    ``oversample_factor`` times denser than the grid of ``x``.
    """
    if a.shape != (a.rows, a.rows) or b.shape != (b.rows, b.rows):
        raise ShapeMismatch("A and B must be square")
    if x.shape != (a.rows, b.rows) or c.shape != x.shape:
        raise ShapeMismatch(f"X and C must have shape {(a.rows, b.rows)}")
    r = matmul(a, x, widen=True) - matmul(x, b, widen=True) - c
    grid = x.descriptor.grid_size if x.descriptor.kind is AlgebraKind.WIENER else None
    return (
        float(np.sum(entry_wiener_norms(r))),
        float(np.max(entry_sup_norms(r, oversample_factor, grid))),
    )
