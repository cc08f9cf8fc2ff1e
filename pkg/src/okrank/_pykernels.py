"""Pure numpy implementations of the series kernels.

Same contract as the compiled module: int64 inputs either produce an exact
int64 result or raise OverflowError.  Object arrays (Python ints) are also
accepted and never overflow.
"""
from __future__ import annotations

import numpy as np

# headroom below 2**63 so the float estimate of the bound is itself safe
_SAFE = float(2**61)


def _check_int64(*bounds: float) -> None:
    est = 1.0
    for b in bounds:
        est *= b
    if est >= _SAFE:
        raise OverflowError("int64 bound exceeded")


def _abs_sum(x: np.ndarray) -> float:
    return float(np.abs(x).sum(dtype=np.float64)) if x.size else 0.0


def _abs_max(x: np.ndarray) -> float:
    return float(np.abs(x).max()) if x.size else 0.0


def _plane_box(p: np.ndarray):
    nz = np.nonzero(p)
    if not nz[0].size:
        return None
    return nz[0].min(), nz[0].max() + 1, nz[1].min(), nz[1].max() + 1


def _plane_conv(p: np.ndarray, r: np.ndarray) -> np.ndarray:
    # 2-D full convolution through a single 1-D convolve (Kronecker packing)
    zp, ap = p.shape
    zr, ar = r.shape
    width = ap + ar - 1
    fp = np.zeros((zp, width), dtype=p.dtype)
    fp[:, :ap] = p
    fr = np.zeros((zr, width), dtype=r.dtype)
    fr[:, :ar] = r
    # the packed result spills only zeros past the last row
    full = np.convolve(fp.ravel(), fr.ravel())
    return full[: (zp + zr - 1) * width].reshape(zp + zr - 1, width)


def conv3(a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    obj = a.dtype == object or b.dtype == object
    if obj:
        a = a.astype(object)
        b = b.astype(object)
        dtype = object
    else:
        _check_int64(_abs_sum(a), _abs_max(b))
        dtype = np.int64
    nz = a.shape[1] + b.shape[1] - 1
    na = a.shape[2] + b.shape[2] - 1
    out = np.zeros((length, nz, na), dtype=dtype)
    if a.shape[1] * a.shape[2] == 1 and b.shape[1] * b.shape[2] == 1:
        full = np.convolve(a[:length, 0, 0], b[:length, 0, 0])
        n = min(length, full.size)
        out[:n, 0, 0] = full[:n]
        return out
    abox = [_plane_box(a[i]) for i in range(min(a.shape[0], length))]
    bbox = [_plane_box(b[k]) for k in range(min(b.shape[0], length))]
    for i, ba in enumerate(abox):
        if ba is None:
            continue
        pa = a[i, ba[0]:ba[1], ba[2]:ba[3]]
        for k in range(min(len(bbox), length - i)):
            bb = bbox[k]
            if bb is None:
                continue
            pb = b[k, bb[0]:bb[1], bb[2]:bb[3]]
            res = _plane_conv(pa, pb)
            z0 = ba[0] + bb[0]
            a0 = ba[2] + bb[2]
            out[i + k, z0:z0 + res.shape[0], a0:a0 + res.shape[1]] += res
    return out


def geom(s: np.ndarray, coef: int, dq: int, dz: int, da: int) -> np.ndarray:
    if dq < 1:
        raise ValueError("dq must be positive")
    if s.dtype == object or not isinstance(coef, (int, np.integer)):
        t = s.astype(object)
    else:
        steps = (s.shape[0] - 1) // dq + 1
        growth = float(abs(coef)) ** steps if abs(coef) > 1 else 1.0
        _check_int64(_abs_sum(s) + 1.0, growth, float(steps))
        t = s.astype(np.int64, copy=True)
    length, nz, na = t.shape
    # destination/source windows in z and a for the shift
    zd = slice(max(dz, 0), nz + min(dz, 0))
    zs = slice(max(-dz, 0), nz - max(dz, 0))
    ad = slice(max(da, 0), na + min(da, 0))
    as_ = slice(max(-da, 0), na - max(da, 0))
    if zd.start >= zd.stop or ad.start >= ad.stop:
        return t
    c = int(coef)
    for n in range(dq, length):
        t[n, zd, ad] += c * t[n - dq, zs, as_]
    return t
