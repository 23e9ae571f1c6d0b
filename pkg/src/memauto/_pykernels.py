"""Pure-Python search kernels.

Reference backend, and the one used when the compiled extension is missing
or a program does not fit 64-bit masks.  ``_kernels.pyx`` mirrors these
functions one for one; both must return identical results.
"""

from collections import deque

from memauto.compiled import A_READ, A_RESET, A_WRITE, SILENT


def membership_search(prog, word, mem0):
    """Breadth-first search over ``(position, state, per-letter vectors)``.

    ``word`` holds letter indices into ``mem0``.  Returns ``(path, explored)``
    where ``path`` is the list of transition indices of a shortest accepting
    run, or None.
    """
    kind, dst = prog.kind, prog.dst
    req, forb, setm, clr = prog.req, prog.forb, prog.setm, prog.clr
    start_, idx = prog.out_start, prog.out_idx
    finals = prog.finals
    n = len(word)

    start = (0, prog.initial, tuple(mem0))
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        pos, q, mem = node
        if pos == n and finals[q]:
            path = []
            while parent[node] is not None:
                node, t = parent[node]
                path.append(t)
            path.reverse()
            return path, len(parent)
        for k in range(start_[q], start_[q + 1]):
            t = idx[k]
            if kind[t] == SILENT:
                c = clr[t]
                nxt = (pos, dst[t], tuple(m & ~c for m in mem) if c else mem)
            else:
                if pos == n:
                    continue
                li = word[pos]
                m = mem[li]
                r = req[t]
                if m & r != r or m & forb[t]:
                    continue
                nm = (m & ~clr[t]) | setm[t]
                new = mem if nm == m else mem[:li] + (nm,) + mem[li + 1 :]
                nxt = (pos + 1, dst[t], new)
            if nxt not in parent:
                parent[nxt] = (node, t)
                queue.append(nxt)
    return None, len(parent)


def abstract_search(prog):
    """Breadth-first search over abstract states ``(state, key mask)``.

    Returns ``(path, explored)``; ``path`` lists transition indices from the
    initial abstract state to the first final one found, or is None.
    """
    kind, var, rmask, dst = prog.kind, prog.var, prog.rmask, prog.dst
    start_, idx, finals = prog.out_start, prog.out_idx, prog.finals
    start = (prog.initial, prog.m0)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q, m = node
        if finals[q]:
            path = []
            while parent[node] is not None:
                node, t = parent[node]
                path.append(t)
            path.reverse()
            return path, len(parent)
        for k in range(start_[q], start_[q + 1]):
            t = idx[k]
            kd = kind[t]
            if kd == A_READ:
                if not (m >> var[t]) & 1:
                    continue
                nm = m
            elif kd == A_WRITE:
                nm = m | (1 << var[t])
            elif kd == A_RESET:
                nm = m & ~rmask[t]
            else:
                nm = m
            nxt = (dst[t], nm)
            if nxt not in parent:
                parent[nxt] = (node, t)
                queue.append(nxt)
    return None, len(parent)


def random_walk(prog, bitgen, max_steps, restarts):
    """Seeded random walks on the key abstraction.

    Each walk starts from the initial abstract state and repeatedly fires a
    transition drawn uniformly (``raw % count``) from the enabled outgoing
    ones.  A walk stops on a final state (success), on a state without
    enabled transitions, or after ``max_steps`` moves.  ``bitgen`` is a
    numpy ``BitGenerator``; drawing with ``random_raw`` keeps the stream
    identical to the compiled backend.

    Returns ``(path or None, walks_started, total_moves)``.
    """
    kind, var, rmask, dst = prog.kind, prog.var, prog.rmask, prog.dst
    start_, idx, finals = prog.out_start, prog.out_idx, prog.finals
    total = 0
    for walk in range(1, restarts + 1):
        q, m = prog.initial, prog.m0
        path = []
        while True:
            if finals[q]:
                return path, walk, total
            if len(path) >= max_steps:
                break
            choices = []
            for k in range(start_[q], start_[q + 1]):
                t = idx[k]
                if kind[t] == A_READ and not (m >> var[t]) & 1:
                    continue
                choices.append(t)
            if not choices:
                break
            t = choices[int(bitgen.random_raw()) % len(choices)]
            kd = kind[t]
            if kd == A_WRITE:
                m |= 1 << var[t]
            elif kd == A_RESET:
                m &= ~rmask[t]
            q = dst[t]
            path.append(t)
            total += 1
    return None, restarts, total

