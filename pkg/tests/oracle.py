"""Independent brute-force decision oracle used to cross-check the engine.

Deliberately naive: enumerates every assignment of values to the subformula
closure, filters by the table constraints and the designation pattern, and
accepts a countermodel only if its image fits inside a viable value set
computed by direct subset enumeration.  No propagation, no search ordering,
no shared code with the engine's decision path.
"""

import itertools

from pnmatrix import App, subformula_closure


def brute_viable_sets(m):
    """All maximal viable subsets of the carrier, by exhaustive enumeration."""
    values = list(m.values)
    viable = []
    for size in range(len(values), 0, -1):
        for combo in itertools.combinations(values, size):
            w = set(combo)
            ok = True
            for name, arity in m.sig:
                for tup in itertools.product(combo, repeat=arity):
                    if not (m.tables[name][tup] & w):
                        ok = False
                        break
                if not ok:
                    break
            if ok and not any(w <= big for big in viable):
                viable.append(w)
    return viable


def oracle_decide(m, gamma, delta):
    """'yes' or 'no' by full assignment enumeration over the closure."""
    gamma, delta = list(gamma), list(delta)
    omega = subformula_closure(gamma + delta)
    compounds = [f for f in omega if isinstance(f, App)]
    maximal = brute_viable_sets(m)
    for assignment in itertools.product(m.values, repeat=len(omega)):
        env = dict(zip(omega, assignment))
        if any(
            env[f] not in m.tables[f.head][tuple(env[a] for a in f.args)]
            for f in compounds
        ):
            continue
        if any(env[g] not in m.designated for g in gamma):
            continue
        if any(env[d] in m.designated for d in delta):
            continue
        image = set(assignment)
        if any(image <= w for w in maximal):
            return "no"
    return "yes"
