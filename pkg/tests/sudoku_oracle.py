"""Backtracking Sudoku solver used as an independent oracle in tests."""


def _candidates(g, i):
    r, c = divmod(i, 9)
    br, bc = r // 3 * 3, c // 3 * 3
    used = {g[r * 9 + k] for k in range(9)}
    used |= {g[k * 9 + c] for k in range(9)}
    used |= {g[(br + a) * 9 + bc + b] for a in range(3) for b in range(3)}
    return [d for d in range(1, 10) if d not in used]


def solutions(givens, limit=2):
    """Up to `limit` solutions of a puzzle given as 81 ints (0 = blank)."""
    g = list(givens)
    found = []

    def search():
        best = None
        for i in range(81):
            if g[i] == 0:
                cs = _candidates(g, i)
                if best is None or len(cs) < len(best[1]):
                    best = (i, cs)
                    if len(cs) <= 1:
                        break
        if best is None:
            found.append(list(g))
            return
        i, cs = best
        for d in cs:
            g[i] = d
            search()
            if len(found) >= limit:
                break
        g[i] = 0

    search()
    return found
