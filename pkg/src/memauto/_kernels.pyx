# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; see ``_pykernels`` for the reference semantics.

Programs must fit 64-bit masks (at most 64 variables); the dispatcher in
``memauto.kernels`` routes anything larger to the Python backend.
"""

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libcpp.string cimport string
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cpython.pycapsule cimport PyCapsule_GetPointer
from numpy.random cimport bitgen_t

DEF OBS = 0
DEF SILENT = 1
DEF A_READ = 0
DEF A_WRITE = 1
DEF A_RESET = 3


cdef vector[int32_t] _i32(seq):
    cdef vector[int32_t] out
    out.reserve(len(seq))
    for x in seq:
        out.push_back(x)
    return out


cdef vector[uint64_t] _u64(seq):
    cdef vector[uint64_t] out
    out.reserve(len(seq))
    for x in seq:
        out.push_back(x)
    return out


cdef list _unwind(vector[int64_t]& parent, vector[int32_t]& via, int64_t node):
    path = []
    while parent[node] >= 0:
        path.append(via[node])
        node = parent[node]
    path.reverse()
    return path


def membership_search(prog, word, mem0):
    cdef vector[int32_t] kind = _i32(prog.kind)
    cdef vector[int32_t] dst = _i32(prog.dst)
    cdef vector[uint64_t] req = _u64(prog.req)
    cdef vector[uint64_t] forb = _u64(prog.forb)
    cdef vector[uint64_t] setm = _u64(prog.setm)
    cdef vector[uint64_t] clr = _u64(prog.clr)
    cdef vector[int32_t] ostart = _i32(prog.out_start)
    cdef vector[int32_t] oidx = _i32(prog.out_idx)
    cdef vector[int32_t] finals = _i32(prog.finals)
    cdef vector[int32_t] w = _i32(word)
    cdef Py_ssize_t L = len(mem0)
    cdef Py_ssize_t S = L + 2
    cdef uint64_t n = w.size()

    cdef vector[uint64_t] store
    cdef vector[int64_t] parent
    cdef vector[int32_t] via
    cdef unordered_map[string, int64_t] seen
    cdef vector[uint64_t] cur
    cur.resize(S)

    store.push_back(0)
    store.push_back(prog.initial)
    for m in mem0:
        store.push_back(m)
    seen[string(<char*>&store[0], S * 8)] = 0
    parent.push_back(-1)
    via.push_back(-1)

    cdef int64_t head = 0
    cdef int64_t found = -1
    cdef Py_ssize_t i, base
    cdef int32_t k, t, li
    cdef uint64_t pos, q, c, mm
    cdef string key
    while head < <int64_t>parent.size():
        base = head * S
        pos = store[base]
        q = store[base + 1]
        if pos == n and finals[q]:
            found = head
            break
        for k in range(ostart[q], ostart[q + 1]):
            t = oidx[k]
            for i in range(S):
                cur[i] = store[base + i]
            if kind[t] == SILENT:
                c = clr[t]
                if c:
                    for i in range(L):
                        cur[2 + i] &= ~c
                cur[1] = dst[t]
            else:
                if pos == n:
                    continue
                li = w[pos]
                mm = cur[2 + li]
                if (mm & req[t]) != req[t] or (mm & forb[t]) != 0:
                    continue
                cur[2 + li] = (mm & ~clr[t]) | setm[t]
                cur[0] = pos + 1
                cur[1] = dst[t]
            key = string(<char*>&cur[0], S * 8)
            if seen.find(key) == seen.end():
                seen[key] = parent.size()
                for i in range(S):
                    store.push_back(cur[i])
                parent.push_back(head)
                via.push_back(t)
        head += 1
    if found < 0:
        return None, parent.size()
    return _unwind(parent, via, found), parent.size()


def abstract_search(prog):
    cdef vector[int32_t] kind = _i32(prog.kind)
    cdef vector[int32_t] var = _i32(prog.var)
    cdef vector[uint64_t] rmask = _u64(prog.rmask)
    cdef vector[int32_t] dst = _i32(prog.dst)
    cdef vector[int32_t] ostart = _i32(prog.out_start)
    cdef vector[int32_t] oidx = _i32(prog.out_idx)
    cdef vector[int32_t] finals = _i32(prog.finals)
    cdef int nv = prog.n_vars

    cdef vector[uint64_t] nodes_q
    cdef vector[uint64_t] nodes_m
    cdef vector[int64_t] parent
    cdef vector[int32_t] via
    cdef unordered_map[uint64_t, int64_t] seen

    nodes_q.push_back(prog.initial)
    nodes_m.push_back(prog.m0)
    parent.push_back(-1)
    via.push_back(-1)
    seen[(<uint64_t>prog.initial << nv) | <uint64_t>prog.m0] = 0

    cdef int64_t head = 0
    cdef int64_t found = -1
    cdef int32_t k, t, kd
    cdef uint64_t q, m, nm, nq, key
    while head < <int64_t>parent.size():
        q = nodes_q[head]
        m = nodes_m[head]
        if finals[q]:
            found = head
            break
        for k in range(ostart[q], ostart[q + 1]):
            t = oidx[k]
            kd = kind[t]
            if kd == A_READ:
                if not ((m >> var[t]) & 1):
                    continue
                nm = m
            elif kd == A_WRITE:
                nm = m | (<uint64_t>1 << var[t])
            elif kd == A_RESET:
                nm = m & ~rmask[t]
            else:
                nm = m
            nq = dst[t]
            key = (nq << nv) | nm
            if seen.find(key) == seen.end():
                seen[key] = parent.size()
                nodes_q.push_back(nq)
                nodes_m.push_back(nm)
                parent.push_back(head)
                via.push_back(t)
        head += 1
    if found < 0:
        return None, parent.size()
    return _unwind(parent, via, found), parent.size()


def random_walk(prog, bitgen, uint64_t max_steps, int restarts):
    cdef vector[int32_t] kind = _i32(prog.kind)
    cdef vector[int32_t] var = _i32(prog.var)
    cdef vector[uint64_t] rmask = _u64(prog.rmask)
    cdef vector[int32_t] dst = _i32(prog.dst)
    cdef vector[int32_t] ostart = _i32(prog.out_start)
    cdef vector[int32_t] oidx = _i32(prog.out_idx)
    cdef vector[int32_t] finals = _i32(prog.finals)
    cdef bitgen_t *rng = <bitgen_t *> PyCapsule_GetPointer(bitgen.capsule, "BitGenerator")

    cdef vector[int32_t] choices
    cdef vector[int32_t] path
    cdef uint64_t total = 0
    cdef uint64_t q, m
    cdef int32_t k, t, kd
    cdef int walk
    with bitgen.lock:
        for walk in range(1, restarts + 1):
            q = prog.initial
            m = prog.m0
            path.clear()
            while True:
                if finals[q]:
                    return [x for x in path], walk, total
                if path.size() >= max_steps:
                    break
                choices.clear()
                for k in range(ostart[q], ostart[q + 1]):
                    t = oidx[k]
                    if kind[t] == A_READ and not ((m >> var[t]) & 1):
                        continue
                    choices.push_back(t)
                if choices.size() == 0:
                    break
                t = choices[rng.next_uint64(rng.state) % choices.size()]
                kd = kind[t]
                if kd == A_WRITE:
                    m |= <uint64_t>1 << var[t]
                elif kd == A_RESET:
                    m &= ~rmask[t]
                q = dst[t]
                path.push_back(t)
                total += 1
    return None, restarts, total
