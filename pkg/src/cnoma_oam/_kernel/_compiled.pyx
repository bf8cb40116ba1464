# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial kernel: Philox4x64-10 streams fused with the fading draw
and the per-scheme capacity math.

Matches the numpy fallback bit-for-bit at the uniform level (same Philox
constants, same counter layout, same 53-bit double conversion) and to
floating-point rounding after the transcendental transforms.
"""

from libc.math cimport log1p, log2, sqrt
from libc.stdint cimport uint64_t

import numpy as np

cdef extern from *:
    """
    #include <stdint.h>
    #include <math.h>

    #if defined(__SIZEOF_INT128__)
    static inline uint64_t cnoma_mulhi(uint64_t a, uint64_t b) {
        return (uint64_t)(((unsigned __int128)a * b) >> 64);
    }
    #else
    static inline uint64_t cnoma_mulhi(uint64_t a, uint64_t b) {
        uint64_t al = a & 0xFFFFFFFFULL, ah = a >> 32;
        uint64_t bl = b & 0xFFFFFFFFULL, bh = b >> 32;
        uint64_t t = ah * bl + ((al * bl) >> 32);
        uint64_t tl = al * bh + (t & 0xFFFFFFFFULL);
        return ah * bh + (t >> 32) + (tl >> 32);
    }
    #endif

    #if defined(__GLIBC__)
    extern void sincos(double, double*, double*);
    static inline void cnoma_sincos(double x, double* s, double* c) {
        sincos(x, s, c);
    }
    #else
    static inline void cnoma_sincos(double x, double* s, double* c) {
        *s = sin(x);
        *c = cos(x);
    }
    #endif
    """
    uint64_t cnoma_mulhi(uint64_t a, uint64_t b) noexcept nogil
    void cnoma_sincos(double x, double* s, double* c) noexcept nogil

BACKEND_NAME = "compiled"

cdef uint64_t M0 = 0xD2E7470EE14C6C93ULL
cdef uint64_t M1 = 0xCA5A826395121157ULL
cdef uint64_t W0 = 0x9E3779B97F4A7C15ULL
cdef uint64_t W1 = 0xBB67AE8584CAA73BULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0
cdef double TWO_PI = 6.283185307179586476925286766559


cdef inline void _philox_block(uint64_t counter, uint64_t key0, uint64_t key1,
                               uint64_t* out) noexcept nogil:
    # Counter blocks used here never carry past the low 64-bit word.
    cdef uint64_t x0 = counter, x1 = 0, x2 = 0, x3 = 0
    cdef uint64_t k0 = key0, k1 = key1
    cdef uint64_t hi0, lo0, hi1, lo1
    cdef int r
    for r in range(10):
        hi0 = cnoma_mulhi(M0, x0)
        lo0 = M0 * x0
        hi1 = cnoma_mulhi(M1, x2)
        lo1 = M1 * x2
        x0 = hi1 ^ x1 ^ k0
        x1 = lo1
        x2 = hi0 ^ x3 ^ k1
        x3 = lo0
        k0 = k0 + W0
        k1 = k1 + W1
    out[0] = x0
    out[1] = x1
    out[2] = x2
    out[3] = x3


cdef inline void _trial_uniforms(uint64_t trial, uint64_t key0, uint64_t key1,
                                 double* u) noexcept nogil:
    cdef uint64_t w[8]
    cdef int i
    _philox_block(2 * trial + 1, key0, key1, w)
    _philox_block(2 * trial + 2, key0, key1, w + 4)
    for i in range(8):
        u[i] = <double> (w[i] >> 11) * INV_2_53


cdef inline double _rician_power(double u1, double u2, double los,
                                 double scatter) noexcept nogil:
    cdef double radius = sqrt(-2.0 * log1p(-u1))
    cdef double angle = TWO_PI * u2
    cdef double sin_a, cos_a
    cnoma_sincos(angle, &sin_a, &cos_a)
    cdef double re = los + scatter * (radius * cos_a)
    cdef double im = scatter * (radius * sin_a)
    return re * re + im * im


def uniform_samples(uint64_t key0, uint64_t key1, uint64_t start_trial, Py_ssize_t n):
    out = np.empty((n, 8), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t t
    with nogil:
        for t in range(n):
            _trial_uniforms(start_trial + <uint64_t> t, key0, key1, &o[t, 0])
    return out


def capacity_samples(uint64_t key0, uint64_t key1, uint64_t start_trial,
                     Py_ssize_t n, double[::1] coeffs):
    if coeffs.shape[0] != 14:
        raise ValueError("coeffs must have length 14")
    out = np.empty((n, 8), dtype=np.float64)
    cdef double[:, ::1] o = out

    cdef double a_s1 = coeffs[0], s_s1 = coeffs[1]
    cdef double a_s2 = coeffs[2], s_s2 = coeffs[3]
    cdef double a_12 = coeffs[4], s_12 = coeffs[5]
    cdef double rho = coeffs[6], delta = coeffs[7], eta = coeffs[8]
    cdef double p_n = coeffs[9], p_f = coeffs[10], alpha = coeffs[11]
    cdef double mu1 = coeffs[12], mu2 = coeffs[13]

    cdef double id_scale = (1.0 - delta) * rho
    cdef double relay_scale = rho * eta * delta
    cdef double ts_relay_scale = 2.0 * eta * alpha * rho / (1.0 - alpha)
    cdef double ts_half = 0.5 * (1.0 - alpha)
    cdef double oam1_half = 0.5 * log2(1.0 + rho * mu1)
    cdef double oam2_half = 0.5 * log2(1.0 + rho * mu2)
    cdef double oam1_quarter = 0.25 * log2(1.0 + rho * mu1)
    cdef double oam2_quarter = 0.25 * log2(1.0 + rho * mu2)

    cdef double u[8]
    cdef double g1, g2, g12
    cdef double s_x1, s_x2_ue1, s_x2_ue2, s_relay, ps_bottleneck, ps_ue1, ps_ue2
    cdef double t_x1, t_x2_ue1, t_x2_ue2, t_relay, ts_bottleneck
    cdef double oma_ue2_sinr
    cdef Py_ssize_t t

    with nogil:
        for t in range(n):
            _trial_uniforms(start_trial + <uint64_t> t, key0, key1, u)
            g1 = _rician_power(u[0], u[1], a_s1, s_s1)
            g2 = _rician_power(u[2], u[3], a_s2, s_s2)
            g12 = _rician_power(u[4], u[5], a_12, s_12)

            s_x1 = id_scale * g1 * p_n
            s_x2_ue1 = id_scale * g1 * p_f / (s_x1 + 1.0)
            s_x2_ue2 = id_scale * g2 * p_f / (id_scale * g2 * p_n + 1.0)
            s_relay = relay_scale * g1 * g12
            ps_bottleneck = min(min(s_x2_ue1, s_x2_ue2), s_relay)
            ps_ue1 = 0.5 * log2(1.0 + s_x1)
            ps_ue2 = 0.5 * log2(1.0 + ps_bottleneck)

            t_x1 = rho * g1 * p_n
            t_x2_ue1 = rho * g1 * p_f / (t_x1 + 1.0)
            t_x2_ue2 = rho * g2 * p_f / (rho * g2 * p_n + 1.0)
            t_relay = ts_relay_scale * g1 * g12
            ts_bottleneck = min(min(t_x2_ue1, t_x2_ue2), t_relay)

            oma_ue2_sinr = min(id_scale * g2, s_relay)

            o[t, 0] = ps_ue1 + oam1_half
            o[t, 1] = ps_ue2 + oam2_half
            o[t, 2] = ps_ue1
            o[t, 3] = ps_ue2
            o[t, 4] = ts_half * log2(1.0 + t_x1)
            o[t, 5] = ts_half * log2(1.0 + ts_bottleneck)
            o[t, 6] = 0.25 * log2(1.0 + id_scale * g1) + oam1_quarter
            o[t, 7] = 0.25 * log2(1.0 + oma_ue2_sinr) + oam2_quarter
    return out
