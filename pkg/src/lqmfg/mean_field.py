"""The mean-field consistency update and its contraction diagnostics.

Playing the best response against a believed mean path regenerates a mean
path: m_0 = nu0 and m_{t+1} = h_p m_t + b g_p lambda_{t+1}, with lambda the
co-state of the believed path. On a head-plus-geometric-tail input the output
is again of that form with the head one element longer and the same ratio, so
the update closes over the finite parameterization. In sup norm the update is
Lipschitz with modulus T_p; T_p < 1 makes it a contraction and its fixed point
is the equilibrium mean field.
"""

from __future__ import annotations

import math

import numpy as np

from .control import _require_stable, _tail_denominator, costate_profile
from .model import RiccatiGains
from .sequence import TailGeometricSeq, sup_distance


def tail_update_rate(gains: RiccatiGains, r: float) -> float:
    """First-step growth rate of the updated sequence beyond the input's tail start.

    For t past the input's head, the update acts on a pure geometric segment
    and the image satisfies out_{t+1} = rate * in_t with

        rate = h_p - c_z b g_p r / (1 - gamma h_p r).
    """
    if not abs(r) <= 1.0:
        raise ValueError(f"tail ratio must satisfy |r| <= 1, got {r}")
    _require_stable(gains)
    params = gains.params
    denom = _tail_denominator(gains, r)
    return gains.h_p - params.c_z * params.b * gains.g_p * r / denom


def update_mean_field(seq: TailGeometricSeq, gains: RiccatiGains,
                      nu0: float) -> TailGeometricSeq:
    """One exact update: best respond to seq, return the regenerated mean path.

    The output head has one more element than the input head and the tail
    ratio is preserved.
    """
    tau = seq.tail_start
    lam = costate_profile(seq, gains, tau + 2)
    new_head = np.empty(tau + 2, dtype=float)
    new_head[0] = nu0
    new_head[1:] = gains.h_p * seq.head + gains.params.b * gains.g_p * lam[1:]
    return TailGeometricSeq(head=new_head, r=seq.r)


def direct_truncation_bound(gains: RiccatiGains, seq: TailGeometricSeq,
                            trunc_terms: int) -> float:
    """Sup-norm error bound for update_mean_field_direct with the given term count."""
    params = gains.params
    ghp_abs = abs(params.gamma * gains.h_p)
    lam_err = params.c_z * ghp_abs ** trunc_terms * seq.bound() / (1.0 - ghp_abs)
    return abs(params.b * gains.g_p) * lam_err


def direct_truncation_terms(gains: RiccatiGains, seq: TailGeometricSeq,
                            floor: float = 1e-14) -> int:
    """Smallest term count whose truncation bound falls below floor."""
    if floor <= 0.0:
        raise ValueError(f"floor must be positive, got {floor}")
    ghp_abs = abs(gains.params.gamma * gains.h_p)
    scale = direct_truncation_bound(gains, seq, 0)
    if scale <= floor or ghp_abs == 0.0:
        return 1
    return max(1, math.ceil(math.log(floor / scale) / math.log(ghp_abs)))


def update_mean_field_direct(seq: TailGeometricSeq, gains: RiccatiGains, nu0: float,
                             t_max: int, trunc_terms: int) -> np.ndarray:
    """Truncated-sum rendition of the update, as an explicit array out_0 .. out_{t_max}.

    Each co-state is the literal partial sum of trunc_terms terms, with no
    closed-form tail. Slow but transparent; serves as the oracle for
    update_mean_field, to accuracy direct_truncation_bound(...).
    """
    if t_max < 0:
        raise ValueError(f"t_max must be nonnegative, got {t_max}")
    if trunc_terms < 1:
        raise ValueError(f"trunc_terms must be at least 1, got {trunc_terms}")
    params = gains.params
    ghp = params.gamma * gains.h_p
    vals = seq.values(t_max + trunc_terms + 1)
    weights = ghp ** np.arange(trunc_terms)
    out = np.empty(t_max + 1, dtype=float)
    out[0] = nu0
    for t in range(t_max):
        lam_next = -params.c_z * float(np.dot(weights, vals[t + 1:t + 1 + trunc_terms]))
        out[t + 1] = gains.h_p * vals[t] + params.b * gains.g_p * lam_next
    return out


def contraction_ratio(gains: RiccatiGains, nu0: float, s1: TailGeometricSeq,
                      s2: TailGeometricSeq) -> float | None:
    """Observed update contraction ratio for one pair, or None for identical inputs."""
    d0 = sup_distance(s1, s2)
    if d0 == 0.0:
        return None
    d1 = sup_distance(update_mean_field(s1, gains, nu0),
                      update_mean_field(s2, gains, nu0))
    return d1 / d0


def contraction_estimate(gains: RiccatiGains, nu0: float, n_pairs: int,
                         seed: int) -> float:
    """Worst observed contraction ratio over random same-ratio pairs.

    Zero-distance pairs are skipped (their ratio is 0/0). The estimate is a
    lower bound on the true Lipschitz modulus and must not exceed T_p.
    """
    if n_pairs < 0:
        raise ValueError(f"n_pairs must be nonnegative, got {n_pairs}")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_pairs):
        r = rng.uniform(-1.0, 1.0)
        n1, n2 = rng.integers(1, 9, size=2)
        s1 = TailGeometricSeq(head=rng.uniform(-10.0, 10.0, n1), r=r)
        s2 = TailGeometricSeq(head=rng.uniform(-10.0, 10.0, n2), r=r)
        ratio = contraction_ratio(gains, nu0, s1, s2)
        if ratio is not None and ratio > worst:
            worst = ratio
    return worst
