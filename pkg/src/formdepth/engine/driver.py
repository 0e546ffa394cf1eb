"""Backend-independent Buchberger driver.

Pair selection is the normal strategy (smallest lcm in the module
order) with sugar degree as tiebreak.  Both classic criteria are
applied: the coprime-lead (product) criterion, valid for ideals only,
and the chain criterion, valid for modules as well.  The result is the
auto-reduced, monic, canonically sorted reduced basis, which is unique
for a given (module, order) regardless of backend or pair strategy.
"""

from __future__ import annotations

import heapq


def buchberger(ops, encoded_gens):
    """Reduced Groebner basis of the submodule generated by the inputs."""
    basis = []
    pending: set[tuple[int, int]] = set()
    heap: list = []
    counter = 0

    def push_pairs(new_index: int):
        nonlocal counter
        h = basis[new_index]
        for i in range(new_index):
            g = basis[i]
            if not ops.same_lead_comp(g, h):
                continue
            sort_key, lcm_term, sugar = ops.pair_data(g, h)
            pending.add((i, new_index))
            heapq.heappush(heap, (sort_key, sugar, counter, i, new_index, lcm_term))
            counter += 1

    for g in encoded_gens:
        if g is None:
            continue
        basis.append(ops.monic(g))
        push_pairs(len(basis) - 1)

    is_ideal = ops.ncomp == 1
    while heap:
        _, _, _, i, j, lcm_term = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        gi, gj = basis[i], basis[j]
        if is_ideal and ops.lead_coprime(gi, gj):
            continue
        if _chain_skip(ops, basis, pending, i, j, lcm_term):
            continue
        s = ops.spoly(gi, gj)
        if s is None:
            continue
        h = ops.normal_form(s, basis)
        if h is None:
            continue
        basis.append(ops.monic(h))
        push_pairs(len(basis) - 1)

    return _autoreduce(ops, basis)


def _chain_skip(ops, basis, pending, i, j, lcm_term) -> bool:
    for k in range(len(basis)):
        if k == i or k == j:
            continue
        if not ops.lead_divides_term(basis[k], lcm_term):
            continue
        a = (i, k) if i < k else (k, i)
        b = (j, k) if j < k else (k, j)
        if a not in pending and b not in pending:
            return True
    return False


def _autoreduce(ops, basis):
    """Drop lead-redundant elements, tail-reduce, sort canonically."""
    live = sorted((g for g in basis if g is not None), key=ops.lead_sort_key)
    kept = []
    for g in live:
        if not any(ops.lead_divides(h, g) for h in kept):
            kept.append(g)
    reduced = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        h = ops.normal_form(g, others) if others else g
        # lead is untouched by tail reduction; h is never None here
        reduced.append(ops.monic(h))
    reduced.sort(key=ops.lead_sort_key)
    return reduced


def normal_form(ops, f, gb):
    """Normal form of an encoded element against a reduced basis."""
    if f is None:
        return None
    return ops.normal_form(f, gb)
