#!/usr/bin/env python3
"""Reference computations for the frozen test fixtures.

This script re-derives, with an implementation that shares no code with the
C++ library, the expected outputs of the analyzer on the bundled example
systems: critical peaks, stratified reduction tables, joinability answers,
non-confluence witnesses, instantiation surveys, and criterion traces.
Run it from the repository root:

    python3 tools/oracle/oracle.py --out tests/fixtures

It writes one JSON file per fixture family and prints a human-readable
summary for eyeball checks. The C++ test suite deep-compares its own
results against these files, so every value here is load-bearing.
"""

import argparse
import itertools
import json
import os
import sys

YES, NO, UNKNOWN = "yes", "no", "unknown"

# ---------------------------------------------------------------------------
# Terms.
#
# A term is a nested tuple:
#   ("v", name, kind, sort)      variable, kind "c" (constructor) or "g"
#   ("a", fun, (arg, arg, ...))  application, also used for constants
# Tuples make structural equality, hashing and dict keys trivial.
# ---------------------------------------------------------------------------


def is_var(t):
    return t[0] == "v"


def mk_app(f, args=()):
    return ("a", f, tuple(args))


def tstr(t):
    if is_var(t):
        return t[1]
    if not t[2]:
        return t[1]
    return t[1] + "(" + ",".join(tstr(a) for a in t[2]) + ")"


def tsize(t):
    if is_var(t):
        return 1
    return 1 + sum(tsize(a) for a in t[2])


def positions(t):
    out = [()]
    if not is_var(t):
        for i, a in enumerate(t[2], start=1):
            out.extend((i,) + q for q in positions(a))
    return out


def subterm(t, p):
    for i in p:
        t = t[2][i - 1]
    return t


def replace(t, p, u):
    if not p:
        return u
    i = p[0]
    args = list(t[2])
    args[i - 1] = replace(args[i - 1], p[1:], u)
    return ("a", t[1], tuple(args))


def term_vars(t, acc=None):
    if acc is None:
        acc = []
    if is_var(t):
        if t not in acc:
            acc.append(t)
    else:
        for a in t[2]:
            term_vars(a, acc)
    return acc


def is_ground(t):
    return not term_vars(t)


def pos_str(p):
    return "e" if not p else ".".join(str(i) for i in p)


# ---------------------------------------------------------------------------
# Signatures and rule systems.
# ---------------------------------------------------------------------------


class System:
    def __init__(self, sid, sorts, cons, funcs, cvars, gvars, rules):
        self.sid = sid
        self.sorts = sorts
        # arity maps: name -> (argsorts tuple, result sort)
        self.cons = {f: self._arity(a) for f, a in cons.items()}
        self.funcs = {f: self._arity(a) for f, a in funcs.items()}
        self.sig = dict(self.cons)
        self.sig.update(self.funcs)
        self.vars = {}
        for n, s in cvars.items():
            self.vars[n] = ("v", n, "c", s)
        for n, s in gvars.items():
            self.vars[n] = ("v", n, "g", s)
        self.rules = [self._rule(l, r, c) for (l, r, c) in rules]

    @staticmethod
    def _arity(spec):
        if "->" in spec:
            args, res = spec.split("->")
            return (tuple(args.split()), res.strip())
        return ((), spec.strip())

    def parse(self, s):
        s = s.replace(" ", "")
        term, rest = self._parse(s)
        assert not rest, "trailing junk in %r" % s
        return term

    def _parse(self, s):
        i = 0
        while i < len(s) and (s[i].isalnum() or s[i] == "_"):
            i += 1
        name, rest = s[:i], s[i:]
        assert name, "empty name in %r" % s
        if name in self.vars:
            return self.vars[name], rest
        assert name in self.sig, "unknown symbol %r" % name
        args = []
        if rest.startswith("("):
            rest = rest[1:]
            while True:
                a, rest = self._parse(rest)
                args.append(a)
                if rest.startswith(","):
                    rest = rest[1:]
                    continue
                assert rest.startswith(")"), "bad args in %r" % s
                rest = rest[1:]
                break
        assert len(args) == len(self.sig[name][0])
        return mk_app(name, args), rest

    def _rule(self, l, r, conds):
        lhs, rhs = self.parse(l), self.parse(r)
        cl = []
        for c in conds:
            if c[0] == "def":
                cl.append(("def", self.parse(c[1])))
            else:
                cl.append((c[0], self.parse(c[1]), self.parse(c[2])))
        lam = 0 if self.is_cons_term(lhs) else 1
        return {"lhs": lhs, "rhs": rhs, "conds": cl, "lam": lam}

    def sort_of(self, t):
        if is_var(t):
            return t[3]
        return self.sig[t[1]][1]

    def is_cons_term(self, t):
        """Built from constructors; variables of either kind allowed."""
        if is_var(t):
            return True
        return t[1] in self.cons and all(self.is_cons_term(a) for a in t[2])

    def is_pure_cons(self, t):
        """Constructors plus constructor variables only."""
        if is_var(t):
            return t[2] == "c"
        return t[1] in self.cons and all(self.is_pure_cons(a) for a in t[2])

    def is_ground_cons(self, t):
        return is_ground(t) and self.is_pure_cons(t)

    def cond_strs(self, conds):
        out = []
        for c in conds:
            if c[0] == "def":
                out.append("def " + tstr(c[1]))
            elif c[0] == "eq":
                out.append(tstr(c[1]) + " == " + tstr(c[2]))
            else:
                out.append(tstr(c[1]) + " != " + tstr(c[2]))
        return out

    def ground_terms(self, sort, max_size):
        """All ground terms of the sort up to max_size, any symbols."""
        memo = {}

        def gen(srt, sz):
            key = (srt, sz)
            if key in memo:
                return memo[key]
            out = []
            for f, (argsorts, res) in sorted(self.sig.items()):
                if res != srt or len(argsorts) + 1 > sz:
                    continue
                if not argsorts:
                    out.append(mk_app(f))
                    continue
                for split in compositions(sz - 1, len(argsorts)):
                    pools = [gen(a, k) for a, k in zip(argsorts, split)]
                    for combo in itertools.product(*pools):
                        out.append(mk_app(f, combo))
            memo[key] = out
            return out

        seen, res = set(), []
        for sz in range(1, max_size + 1):
            for t in gen(sort, sz):
                if tsize(t) <= max_size and t not in seen:
                    seen.add(t)
                    res.append(t)
        res.sort(key=lambda t: (tsize(t), tstr(t)))
        return res

    def pure_cons_ground_terms(self, sort, max_size):
        return [
            t for t in self.ground_terms(sort, max_size) if self.is_pure_cons(t)
        ]


def compositions(total, parts):
    """Ways to write total as an ordered sum of `parts` positive ints."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Matching and unification (kind respecting).
# ---------------------------------------------------------------------------


def match(sys_, pattern, subject, sigma=None):
    if sigma is None:
        sigma = {}
    if is_var(pattern):
        key = pattern[1]
        if pattern[2] == "c" and not sys_.is_pure_cons(subject):
            return None
        if key in sigma:
            return sigma if sigma[key] == subject else None
        sigma = dict(sigma)
        sigma[key] = subject
        return sigma
    if is_var(subject) or pattern[1] != subject[1]:
        return None
    for pa, sa in zip(pattern[2], subject[2]):
        sigma = match(sys_, pa, sa, sigma)
        if sigma is None:
            return None
    return sigma


def apply_sub(sigma, t):
    if is_var(t):
        return sigma.get(t[1], t)
    return ("a", t[1], tuple(apply_sub(sigma, a) for a in t[2]))


def compose_bind(sigma, name, val):
    out = {k: apply_sub({name: val}, v) for k, v in sigma.items()}
    out[name] = val
    return out


def mgu(sys_, pairs):
    """Syntactic unification; constructor variables only bind pure
    constructor terms, weakening general variables inside candidate
    bindings to fresh constructor variables when needed."""
    sigma = {}
    work = list(pairs)
    fresh = [0]

    def occurs(name, t):
        return any(v[1] == name for v in term_vars(t))

    while work:
        a, b = work.pop(0)
        a, b = apply_sub(sigma, a), apply_sub(sigma, b)
        if a == b:
            continue
        if not is_var(a) and not is_var(b):
            if a[1] != b[1]:
                return None
            work = list(zip(a[2], b[2])) + work
            continue
        if not is_var(a):
            a, b = b, a
        # a is a variable now
        if is_var(b):
            if a[2] == b[2]:
                sigma = compose_bind(sigma, a[1], b)
            elif a[2] == "g":
                sigma = compose_bind(sigma, a[1], b)
            else:
                sigma = compose_bind(sigma, b[1], a)
            continue
        if occurs(a[1], b):
            return None
        if a[2] == "c":
            if not sys_.is_cons_term(b):
                return None
            gv = [v for v in term_vars(b) if v[2] == "g"]
            for v in gv:
                fresh[0] += 1
                w = ("v", "_c%d" % fresh[0], "c", v[3])
                sigma = compose_bind(sigma, v[1], w)
            b = apply_sub(sigma, b)
        sigma = compose_bind(sigma, a[1], b)
    return sigma


def rename_rule(rule, taken):
    """Prime every variable of the rule until disjoint from taken names."""
    ren = {}
    for v in rule_vars(rule):
        n = v[1]
        while n in taken or n in ren.values():
            n += "'"
        ren[v[1]] = n
    sub = {old: ("v", new, kind_sort(rule, old)[0], kind_sort(rule, old)[1])
           for old, new in ren.items()}
    return {
        "lhs": apply_sub(sub, rule["lhs"]),
        "rhs": apply_sub(sub, rule["rhs"]),
        "conds": [sub_cond(sub, c) for c in rule["conds"]],
        "lam": rule["lam"],
    }


def kind_sort(rule, name):
    for v in rule_vars(rule):
        if v[1] == name:
            return v[2], v[3]
    raise KeyError(name)


def rule_vars(rule):
    acc = []
    term_vars(rule["lhs"], acc)
    term_vars(rule["rhs"], acc)
    for c in rule["conds"]:
        for t in c[1:]:
            term_vars(t, acc)
    return acc


def sub_cond(sigma, c):
    return (c[0],) + tuple(apply_sub(sigma, t) for t in c[1:])


# ---------------------------------------------------------------------------
# Critical peaks.
# ---------------------------------------------------------------------------


def critical_peaks(sys_):
    peaks = []
    for i1, r1 in enumerate(sys_.rules):
        taken = {v[1] for v in rule_vars(r1)}
        for i0, r0 in enumerate(sys_.rules):
            r0r = rename_rule(r0, taken)
            for p in positions(r1["lhs"]):
                inner = subterm(r1["lhs"], p)
                if is_var(inner):
                    continue
                if sys_.sort_of(r0r["lhs"]) != sys_.sort_of(inner):
                    continue
                sigma = mgu(sys_, [(r0r["lhs"], inner)])
                if sigma is None:
                    continue
                t0 = apply_sub(sigma, replace(r1["lhs"], p, r0r["rhs"]))
                t1 = apply_sub(sigma, r1["rhs"])
                if t0 == t1:
                    continue
                peaks.append({
                    "rule0": i0,
                    "rule1": i1,
                    "pos": p,
                    "peak": apply_sub(sigma, r1["lhs"]),
                    "t0": t0,
                    "c0": [sub_cond(sigma, c) for c in r0r["conds"]],
                    "t1": t1,
                    "c1": [sub_cond(sigma, c) for c in r1["conds"]],
                    "lam0": r0["lam"],
                    "lam1": r1["lam"],
                    "outer_lhs_vars": [v for v in term_vars(r1["lhs"])],
                    "sigma": sigma,
                })
    peaks.sort(key=lambda pk: (pk["rule0"], pk["rule1"], pk["pos"]))
    return peaks


def canonical_peak(pk):
    """Rename peak variables by first occurrence: constructor variables
    to x1,x2,..., general variables to X1,X2,..."""
    order = []
    def walk(t):
        term_vars(t, order)
    walk(pk["peak"])
    walk(pk["t0"])
    for c in pk["c0"]:
        for t in c[1:]:
            walk(t)
    walk(pk["t1"])
    for c in pk["c1"]:
        for t in c[1:]:
            walk(t)
    ren, nc, ng = {}, 0, 0
    for v in order:
        if v[2] == "c":
            nc += 1
            ren[v[1]] = ("v", "x%d" % nc, "c", v[3])
        else:
            ng += 1
            ren[v[1]] = ("v", "X%d" % ng, "g", v[3])
    return {
        "peak": apply_sub(ren, pk["peak"]),
        "t0": apply_sub(ren, pk["t0"]),
        "c0": [sub_cond(ren, c) for c in pk["c0"]],
        "t1": apply_sub(ren, pk["t1"]),
        "c1": [sub_cond(ren, c) for c in pk["c1"]],
        "ren": ren,
    }


def peak_complementary(sys_, pk, engine, weak):
    """Two routes: an equation in one condition list whose exact sides
    recur as a disequation in the other, or one shared term equated to two
    distinct irreducible ground terms. `weak` pools both condition lists."""
    if weak:
        sides = [pk["c0"] + pk["c1"], pk["c0"] + pk["c1"]]
    else:
        sides = [pk["c0"], pk["c1"]]
    unknown = False
    for d0, d1 in ((sides[0], sides[1]), (sides[1], sides[0])):
        for c in d0:
            if c[0] != "eq":
                continue
            for c2 in d1:
                if c2[0] == "neq" and c[1] == c2[1] and c[2] == c2[2]:
                    return YES
        for c in d0:
            if c[0] != "eq":
                continue
            for c2 in d1:
                if c2[0] != "eq" or c[1] != c2[1] or c[2] == c2[2]:
                    continue
                u, v = c[2], c2[2]
                if not (is_ground(u) and is_ground(v)):
                    continue
                iu = engine.irreducible(u)
                iv = engine.irreducible(v)
                if iu == YES and iv == YES:
                    return YES
                if iu != NO and iv != NO:
                    unknown = True
    return UNKNOWN if unknown else NO


# ---------------------------------------------------------------------------
# The stratified rewrite engine.
#
# Layer tables over a finite, saturated universe. The constructor phase
# iterates rules with constructor left-hand sides to a fixpoint; the full
# phase then adds the remaining rules, each layer's conditions judged
# against the previous one. Completeness flags record whether every
# candidate redex was definitively licensed or refuted.
# ---------------------------------------------------------------------------

SIZE_CAP = 48
UNIV_CAP = 6000
LAYER_CAP = 40
REACH_CAP = 30000


class Engine:
    def __init__(self, sys_, seeds):
        self.sys = sys_
        self.universe = []
        self.uset = set()
        self.cands = {}
        self.truncated = set()
        self._reach_memo = {}
        self._saturate(seeds)
        self._layering()

    # -- universe ----------------------------------------------------------

    def _add(self, t):
        if t in self.uset:
            return True
        if tsize(t) > SIZE_CAP or len(self.universe) >= UNIV_CAP:
            return False
        self.uset.add(t)
        self.universe.append(t)
        return True

    def _saturate(self, seeds):
        for t in seeds:
            self._add(t)
        i = 0
        while i < len(self.universe):
            t = self.universe[i]
            i += 1
            cands = []
            for p in positions(t):
                sub = subterm(t, p)
                if is_var(sub):
                    continue
                for ridx, rule in enumerate(self.sys.rules):
                    sigma = match(self.sys, rule["lhs"], sub)
                    if sigma is None:
                        continue
                    reduct = replace(t, p, apply_sub(sigma, rule["rhs"]))
                    ok = self._add(reduct)
                    cond_ok = True
                    for c in rule["conds"]:
                        for ct in c[1:]:
                            if not self._add(apply_sub(sigma, ct)):
                                cond_ok = False
                    cands.append({
                        "pos": p,
                        "rule": ridx,
                        "sigma": sigma,
                        "reduct": reduct,
                        "reduct_ok": ok,
                        "cond_ok": cond_ok,
                    })
                    if not ok or not cond_ok:
                        self.truncated.add(t)
            self.cands[t] = cands

    # -- layers ------------------------------------------------------------

    def _empty_table(self):
        return {t: ((), True) for t in self.universe}

    def _step(self, low, low_key, cons_only, base=None):
        tbl = {}
        for t in self.universe:
            edges = []
            complete = True
            seen = set()
            if base is not None:
                for e in base[t][0]:
                    edges.append(e)
                    seen.add(e)
                complete = base[t][1]
            for cd in self.cands.get(t, []):
                rule = self.sys.rules[cd["rule"]]
                if cons_only and rule["lam"] != 0:
                    continue
                if not cd["cond_ok"]:
                    complete = False
                    continue
                st = self._fulfilled(rule["conds"], cd["sigma"], low, low_key)
                if st == NO:
                    continue
                if st == UNKNOWN or not cd["reduct_ok"]:
                    complete = False
                    continue
                e = (cd["pos"], cd["rule"], cd["reduct"])
                if e not in seen:
                    edges.append(e)
                    seen.add(e)
            edges.sort(key=lambda e: (e[0], e[1], tstr(e[2])))
            tbl[t] = (tuple(edges), complete)
        return tbl

    def _layering(self):
        self.stamps = {}
        self.fin = [self._empty_table()]
        self.fin_stable = False
        for k in range(1, LAYER_CAP + 1):
            nxt = self._step(self.fin[-1], ("f", len(self.fin) - 1), True)
            self._stamp(nxt, str(k))
            if nxt == self.fin[-1]:
                self.fin_stable = True
                break
            self.fin.append(nxt)
        self.om = [self.fin[-1]]
        self.om_stable = False
        for k in range(1, LAYER_CAP + 1):
            nxt = self._step(self.om[-1], ("m", len(self.om) - 1), False,
                             base=self.fin[-1])
            self._stamp(nxt, "w+%d" % k)
            if nxt == self.om[-1]:
                self.om_stable = True
                break
            self.om.append(nxt)

    def _stamp(self, tbl, label):
        for t, (edges, _c) in tbl.items():
            for e in edges:
                key = (t,) + e
                if key not in self.stamps:
                    self.stamps[key] = label

    def table(self, depth):
        """depth: ("fin", n) | "w" | ("w+", n) | "w+w"."""
        if depth == "w":
            return self.fin[-1], self.fin_stable
        if depth == "w+w":
            return self.om[-1], self.om_stable and self.fin_stable
        kind, n = depth
        if kind == "fin":
            if n < len(self.fin):
                return self.fin[n], True
            return self.fin[-1], self.fin_stable
        if n < len(self.om):
            return self.om[n], self.fin_stable
        return self.om[-1], self.om_stable and self.fin_stable

    # -- queries -----------------------------------------------------------

    def _fulfilled(self, conds, sigma, low, low_key):
        res = YES
        for c in conds:
            kind = c[0]
            args = [apply_sub(sigma, t) for t in c[1:]]
            if any(a not in self.uset for a in args):
                st = UNKNOWN
            elif kind == "eq":
                st = self._joinable(args[0], args[1], low, low_key)
            elif kind == "def":
                st = self._def(args[0], low, low_key)
            else:
                st = self._neq(args[0], args[1], low, low_key)
            if st == NO:
                return NO
            if st == UNKNOWN:
                res = UNKNOWN
        return res

    def _reach(self, t, low, low_key):
        memo_key = (low_key, t)
        if memo_key in self._reach_memo:
            return self._reach_memo[memo_key]
        members = [t]
        mset = {t}
        complete = True
        i = 0
        while i < len(members):
            cur = members[i]
            i += 1
            if cur not in low:
                complete = False
                continue
            edges, cpl = low[cur]
            if not cpl:
                complete = False
            for (_p, _r, to) in edges:
                if to not in mset:
                    if len(members) >= REACH_CAP:
                        complete = False
                        break
                    mset.add(to)
                    members.append(to)
        out = (members, mset, complete)
        self._reach_memo[memo_key] = out
        return out

    def _joinable(self, a, b, low, low_key):
        ma, sa, ca = self._reach(a, low, low_key)
        mb, sb, cb = self._reach(b, low, low_key)
        if sa & sb:
            return YES
        if ca and cb:
            return NO
        return UNKNOWN

    def _def(self, a, low, low_key):
        ma, _sa, ca = self._reach(a, low, low_key)
        if any(self.sys.is_ground_cons(m) for m in ma):
            return YES
        return NO if ca else UNKNOWN

    def _neq(self, a, b, low, low_key):
        ma, _sa, ca = self._reach(a, low, low_key)
        mb, _sb, cb = self._reach(b, low, low_key)
        ga = [m for m in ma if self.sys.is_ground_cons(m)]
        gb = [m for m in mb if self.sys.is_ground_cons(m)]
        saw_unknown = False
        for u in ga:
            for v in gb:
                j = self._joinable(u, v, low, low_key)
                if j == NO:
                    return YES
                if j == UNKNOWN:
                    saw_unknown = True
        if ca and cb and not saw_unknown:
            return NO
        return UNKNOWN

    def one_step(self, t, depth="w+w"):
        tbl, stable = self.table(depth)
        if t not in tbl:
            return [], False
        edges, complete = tbl[t]
        return list(edges), complete and stable

    def reach_info(self, t, depth="w+w"):
        tbl, stable = self.table(depth)
        members = [t]
        mset = {t}
        parents = {t: None}
        complete = True
        i = 0
        while i < len(members):
            cur = members[i]
            i += 1
            if cur not in tbl:
                complete = False
                continue
            edges, cpl = tbl[cur]
            if not cpl:
                complete = False
            for e in edges:
                to = e[2]
                if to not in mset:
                    mset.add(to)
                    members.append(to)
                    parents[to] = (cur, e)
        return {
            "members": members,
            "set": mset,
            "complete": complete and stable,
            "parents": parents,
        }

    def joinable(self, a, b, depth="w+w"):
        ra = self.reach_info(a, depth)
        rb = self.reach_info(b, depth)
        if ra["set"] & rb["set"]:
            return YES
        if ra["complete"] and rb["complete"]:
            return NO
        return UNKNOWN

    def irreducible(self, t, depth="w+w"):
        edges, complete = self.one_step(t, depth)
        if edges:
            return NO
        return YES if complete else UNKNOWN

    def normal_forms(self, t):
        r = self.reach_info(t)
        forms = [m for m in r["members"] if self.irreducible(m) == YES]
        forms.sort(key=lambda m: (tsize(m), tstr(m)))
        return forms, r["complete"]

    def parallel_reducts(self, t, cap=4096):
        """Simultaneous steps at pairwise incomparable redex positions,
        including the empty set of positions."""
        tbl, _stable = self.table("w+w")
        if t not in tbl:
            return []
        by_pos = {}
        for e in tbl[t][0]:
            by_pos.setdefault(e[0], []).append(e[2])
        plist = sorted(by_pos)
        results = {t}

        def compatible(sel, p):
            return all(not prefix(a, p) and not prefix(p, a) for a in sel)

        def prefix(a, b):
            return len(a) <= len(b) and b[: len(a)] == a

        def go(idx, sel, cur):
            if len(results) > cap:
                return
            if idx == len(plist):
                return
            go(idx + 1, sel, cur)
            p = plist[idx]
            if compatible(sel, p):
                for to in by_pos[p]:
                    nxt = replace(cur, p, subterm(to, p))
                    results.add(nxt)
                    go(idx + 1, sel + [p], nxt)

        go(0, [], t)
        return sorted(results, key=lambda m: (tsize(m), tstr(m)))

    def stamp_of(self, t, edge):
        return self.stamps.get((t,) + tuple(edge), "?")

    def strata(self):
        return {
            "fin_layers": len(self.fin),
            "fin_stable": self.fin_stable,
            "omega_layers": len(self.om),
            "omega_stable": self.om_stable,
        }


# ---------------------------------------------------------------------------
# Normality and criteria.
# ---------------------------------------------------------------------------


def tri_and(a, b):
    if a == NO or b == NO:
        return NO
    if a == UNKNOWN or b == UNKNOWN:
        return UNKNOWN
    return YES


def normality(sys_, engine):
    """Per rule: every equation with a certified irreducible ground side is
    normal; otherwise syntactic fallbacks (constructor-variable sides, two
    ground sides, a matching Def literal) give the quasi tier."""
    per_rule = []
    for rule in sys_.rules:
        eqs = [c for c in rule["conds"] if c[0] == "eq"]
        normal_st, quasi_st = YES, YES
        for (_k, u, v) in eqs:
            side = NO
            for s in (u, v):
                if is_ground(s):
                    ir = engine.irreducible(s)
                    if ir == YES:
                        side = YES
                        break
                    if ir == UNKNOWN and side == NO:
                        side = UNKNOWN
            normal_st = tri_and(normal_st, side)
            q = side
            if q != YES:
                if all(x[2] == "c" for x in term_vars(u) + term_vars(v)):
                    q = YES
                elif is_ground(u) and is_ground(v):
                    q = YES
                elif any(c[0] == "def" and (c[1] == u or c[1] == v)
                         for c in rule["conds"]):
                    q = YES
            quasi_st = tri_and(quasi_st, q)
        if normal_st == YES:
            per_rule.append("normal")
        elif quasi_st == YES:
            per_rule.append("quasi_normal_syntactic")
        elif normal_st == UNKNOWN or quasi_st == UNKNOWN:
            per_rule.append("unknown")
        else:
            per_rule.append("fails")
    order = {"normal": 0, "quasi_normal_syntactic": 1, "unknown": 2, "fails": 3}
    summary = max(per_rule, key=lambda s: order[s]) if per_rule else "normal"
    return summary, per_rule


def is_left_linear(sys_):
    bad = []
    for i, r in enumerate(sys_.rules):
        vs = []
        term_vars(r["lhs"], vs)
        count = {}
        def cnt(t):
            if is_var(t):
                count[t[1]] = count.get(t[1], 0) + 1
            else:
                for a in t[2]:
                    cnt(a)
        cnt(r["lhs"])
        if any(n > 1 for n in count.values()):
            bad.append(i)
    return not bad, bad


def conservative_constructors(sys_):
    for r in sys_.rules:
        if r["lam"] != 0:
            continue
        for c in r["conds"]:
            for t in c[1:]:
                if any(v[2] == "g" for v in term_vars(t)):
                    return False
    return True


def eq_requirement(sys_, engine, implicit_def):
    """Every equation needs a Def literal on a side, an irreducible ground
    side, or (under the implicit rule) two pure constructor sides."""
    failures = []
    for i, r in enumerate(sys_.rules):
        for (_k, u, v) in [c for c in r["conds"] if c[0] == "eq"]:
            ok = False
            for s in (u, v):
                if any(c[0] == "def" and c[1] == s for c in r["conds"]):
                    ok = True
                if is_ground(s) and engine.irreducible(s) == YES:
                    ok = True
            if implicit_def and sys_.is_pure_cons(u) and sys_.is_pure_cons(v):
                ok = True
            if not ok:
                failures.append({"rule": i,
                                 "literal": tstr(u) + " == " + tstr(v)})
    return (YES if not failures else NO), failures


def constructor_confluence(sys_, engine_factory, assumed=False):
    subs = [r for r in sys_.rules if r["lam"] == 0]
    if assumed:
        return YES, "assumed"
    if not subs:
        return YES, "no constructor rules"
    sub_sys = System(
        sys_.sid + "#cons",
        sys_.sorts,
        {f: _arity_str(a) for f, a in sys_.cons.items()},
        {f: _arity_str(a) for f, a in sys_.funcs.items()},
        {}, {}, [],
    )
    sub_sys.vars = sys_.vars
    sub_sys.rules = subs
    ll, _bad = is_left_linear(sub_sys)
    if not ll:
        return UNKNOWN, "subsystem not left-linear"
    engine = engine_factory()
    summary, _per = normality(sub_sys, engine)
    if summary != "normal":
        return UNKNOWN, "subsystem not normal (%s)" % summary
    pks = critical_peaks(sub_sys)
    for pk in pks:
        if peak_complementary(sub_sys, pk, engine, weak=False) != YES:
            return UNKNOWN, "subsystem peak not complementary"
    return YES, ("no critical peaks in subsystem" if not pks
                 else "all subsystem peaks complementary")


def _arity_str(a):
    args, res = a
    return (" ".join(args) + " -> " + res) if args else res


# ---------------------------------------------------------------------------
# Survey and witness search.
# ---------------------------------------------------------------------------


def survey_assignments(sys_, engine, pk, k):
    """Normalized instantiations of a peak: every variable bound to an
    irreducible pure constructor ground term of size <= k; for inner
    overlaps, the instantiated outer lhs variables must be irreducible."""
    vs = []
    for t in [pk["peak"], pk["t0"], pk["t1"]]:
        term_vars(t, vs)
    for c in pk["c0"] + pk["c1"]:
        for t in c[1:]:
            term_vars(t, vs)
    vs.sort(key=lambda v: v[1])
    pools = []
    for v in vs:
        pool = [t for t in sys_.pure_cons_ground_terms(v[3], k)
                if engine.irreducible(t) == YES]
        pools.append(pool)
    out = []
    for combo in itertools.product(*pools):
        phi = {v[1]: t for v, t in zip(vs, combo)}
        if pk["pos"]:
            skip = False
            for x in pk["outer_lhs_vars"]:
                inst = apply_sub(phi, apply_sub(pk["sigma"], x))
                if engine.irreducible(inst) != YES:
                    skip = True
                    break
            if skip:
                continue
        out.append((vs, phi))
    return out


def survey_peak(sys_, engine, pk, canon, k):
    instances = []
    for vs, phi in survey_assignments(sys_, engine, pk, k):
        conds = [sub_cond(phi, c) for c in pk["c0"] + pk["c1"]]
        st = engine._fulfilled([c for c in conds], {}, engine.om[-1],
                               ("m", len(engine.om) - 1))
        t0 = apply_sub(phi, pk["t0"])
        t1 = apply_sub(phi, pk["t1"])
        if st == NO:
            status = "ConditionInfeasible"
        elif st == UNKNOWN:
            status = "Unknown"
        else:
            j = engine.joinable(t0, t1)
            status = {"yes": "Joinable", "no": "NotJoinable",
                      "unknown": "Unknown"}[j]
        phi_canon = {}
        for v in vs:
            cv = canon["ren"].get(v[1])
            phi_canon[cv[1] if cv else v[1]] = tstr(phi[v[1]])
        instances.append({"phi": phi_canon, "status": status,
                          "_t0": t0, "_t1": t1, "_phi": phi})
    if any(i["status"] == "NotJoinable" for i in instances):
        summary = "NOT-JOINABLE-instance-found"
    elif any(i["status"] == "Unknown" for i in instances):
        summary = "some-unknown"
    else:
        summary = "all-instances-ok"
    return summary, instances


def search_witness(sys_, engine, peaks, canons, k):
    # Route a: non-joinable peak instances.
    for pk, canon in zip(peaks, canons):
        _summary, instances = survey_peak(sys_, engine, pk, canon, k)
        for inst in instances:
            if inst["status"] != "NotJoinable":
                continue
            seed = apply_sub(inst["_phi"], pk["peak"])
            e0 = inst["_t0"]
            e1 = inst["_t1"]
            d0 = derivation_steps(engine, [seed, e0],
                                  [(pk["pos"], pk["rule0"])])
            d1 = derivation_steps(engine, [seed, e1], [((), pk["rule1"])])
            return mk_witness(engine, seed, e0, e1, d0, d1, "peak-instance")
    # Route b: ground seeds in (size, text) order.
    seeds = []
    for sort in sorted(sys_.sorts):
        seeds.extend(sys_.ground_terms(sort, k))
    seeds.sort(key=lambda t: (tsize(t), tstr(t)))
    for seed in seeds:
        r = engine.reach_info(seed)
        members = r["members"]
        complete = [engine.reach_info(m)["complete"] for m in members]
        for i in range(len(members)):
            if not complete[i]:
                continue
            ri = engine.reach_info(members[i])
            for j in range(i + 1, len(members)):
                if not complete[j]:
                    continue
                rj = engine.reach_info(members[j])
                if ri["set"] & rj["set"]:
                    continue
                d0 = path_from_parents(engine, r, seed, members[i])
                d1 = path_from_parents(engine, r, seed, members[j])
                return mk_witness(engine, seed, members[i], members[j],
                                  d0, d1, "seed-divergence")
    return None


def path_from_parents(engine, r, seed, target):
    chain = []
    cur = target
    while cur != seed:
        parent, edge = r["parents"][cur]
        chain.append((parent, edge))
        cur = parent
    chain.reverse()
    steps = []
    for (src, edge) in chain:
        steps.append({
            "from": tstr(src),
            "pos": pos_str(edge[0]),
            "rule": edge[1],
            "to": tstr(edge[2]),
            "stamp": engine.stamp_of(src, edge),
        })
    return steps


def derivation_steps(engine, terms, moves):
    steps = []
    for (src, dst), (p, ridx) in zip(zip(terms, terms[1:]), moves):
        edges, _c = engine.one_step(src)
        stamp = "?"
        for e in edges:
            if e[0] == p and e[1] == ridx and e[2] == dst:
                stamp = engine.stamp_of(src, e)
        steps.append({"from": tstr(src), "pos": pos_str(p), "rule": ridx,
                      "to": tstr(dst), "stamp": stamp})
    return steps


def mk_witness(engine, seed, e0, e1, d0, d1, route):
    r0 = engine.reach_info(e0)
    r1 = engine.reach_info(e1)
    return {
        "route": route,
        "seed": tstr(seed),
        "endpoints": [tstr(e0), tstr(e1)],
        "derivation0": d0,
        "derivation1": d1,
        "nonjoin0": sorted(tstr(m) for m in r0["members"]),
        "nonjoin1": sorted(tstr(m) for m in r1["members"]),
    }


# ---------------------------------------------------------------------------
# Criterion traces and the pipeline.
# ---------------------------------------------------------------------------


def run_criteria(sys_, engine, peaks, canons, comp, weak, assume_term=False,
                 assume_cons_confluent=False, k=3):
    # The implicit-Def allowance defaults on exactly when the declared
    # instantiation set avoids constructor variables; every bundled system
    # instantiates general variables only.
    implicit = True
    ll, ll_bad = is_left_linear(sys_)
    cons = conservative_constructors(sys_)
    normal_summary, normal_rules = normality(sys_, engine)
    ccf, ccf_why = constructor_confluence(sys_, lambda: engine,
                                          assumed=assume_cons_confluent)
    eq_ok, eq_fail = eq_requirement(sys_, engine, implicit)

    def hypo(name, status, detail=""):
        return {"name": name, "status": status, "detail": detail}

    comp_hypos = [
        hypo("left-linear", YES if ll else NO,
             "" if ll else "rules " + ",".join(map(str, ll_bad))),
        hypo("conservative-constructors", YES if cons else NO),
        hypo("equation-definedness", YES if not eq_fail else NO,
             "" if not eq_fail else json.dumps(eq_fail[0])),
        hypo("constructor-level-confluence", ccf, ccf_why),
    ]
    bad_peaks = [i for i, c in enumerate(comp) if c != YES]
    comp_hypos.append(hypo("peaks-complementary",
                           YES if not bad_peaks else NO,
                           "" if not bad_peaks else
                           "peaks " + ",".join(map(str, bad_peaks))))
    comp_ok = all(h["status"] == YES for h in comp_hypos)

    gen_vars_ok = all(
        not any(v[2] == "g" for c in r["conds"] for t in c[1:]
                for v in term_vars(t))
        for r in sys_.rules)
    weak_bad = []
    for i, pk in enumerate(peaks):
        need = comp[i] if (pk["lam0"], pk["lam1"]) != (1, 1) else weak[i]
        if need != YES:
            weak_bad.append(i)
    weak_hypos = [
        comp_hypos[0],
        hypo("constructor-variable-conditions", YES if gen_vars_ok else NO,
             "" if gen_vars_ok else "a condition uses a general variable"),
        comp_hypos[2],
        comp_hypos[3],
        hypo("peaks-weakly-complementary", YES if not weak_bad else NO,
             "" if not weak_bad else "peaks " + ",".join(map(str, weak_bad))),
    ]
    weak_ok = all(h["status"] == YES for h in weak_hypos)

    verdict, criterion, witness = None, None, None
    if comp_ok:
        verdict, criterion = "confluent", "complementary"
    elif weak_ok:
        verdict, criterion = "confluent", "weakly-complementary"
    else:
        witness = search_witness(sys_, engine, peaks, canons, k)
        if witness:
            verdict = "not-confluent"
    survey = None
    if verdict is None:
        if assume_term:
            survey = []
            for pk, canon in zip(peaks, canons):
                summary, instances = survey_peak(sys_, engine, pk, canon, k)
                survey.append({
                    "summary": summary,
                    "instances": [{"phi": i["phi"], "status": i["status"]}
                                  for i in instances],
                })
        verdict = "unknown"
    exit_code = {"confluent": 0, "not-confluent": 1, "unknown": 2}[verdict]
    return {
        "left_linear": ll,
        "conservative_constructors": cons,
        "normality": {"summary": normal_summary, "rules": normal_rules},
        "constructor_confluence": {"status": ccf, "why": ccf_why},
        "eq_requirement_ok": not eq_fail,
        "hypotheses_complementary": comp_hypos,
        "hypotheses_weakly": weak_hypos,
        "verdict": verdict,
        "criterion": criterion,
        "witness": witness,
        "survey": survey,
        "exit_code": exit_code,
    }


# ---------------------------------------------------------------------------
# The bundled systems.
# ---------------------------------------------------------------------------


def make_systems():
    member_rules = [
        ("minus(x,0)", "x", []),
        ("minus(s(x),s(y))", "minus(x,y)", []),
        ("mbp(x,nil)", "false", []),
        ("mbp(x,cns(y,l))", "true", [("eq", "x", "y")]),
        ("mbp(x,cns(y,l))", "mbp(x,l)", [("neq", "x", "y")]),
    ]
    member = System(
        "member", ["nat", "bool", "list"],
        {"0": "nat", "s": "nat -> nat", "true": "bool", "false": "bool",
         "nil": "list", "cns": "nat list -> list"},
        {"minus": "nat nat -> nat", "mbp": "nat list -> bool"},
        {"x": "nat", "y": "nat", "l": "list"}, {},
        member_rules)

    cp = System(
        "cp", ["nat", "bool", "list"],
        {"0": "nat", "s": "nat -> nat", "true": "bool", "false": "bool",
         "nil": "list", "cns": "nat list -> list"},
        {"minus": "nat nat -> nat", "mbp": "nat list -> bool"},
        {"x": "nat", "y": "nat", "l": "list"}, {},
        member_rules)

    whl = System(
        "while", ["nat", "bool", "list"],
        {"0": "nat", "s": "nat -> nat", "true": "bool", "false": "bool",
         "nil": "list", "cns": "nat list -> list"},
        {"minus": "nat nat -> nat", "mbp": "nat list -> bool",
         "while": "bool nat -> nat"},
        {"x": "nat", "y": "nat", "l": "list"},
        {"X": "bool", "Y": "nat"},
        member_rules + [
            ("while(X,Y)", "Y", [("eq", "X", "false")]),
            ("while(X,Y)", "while(X,s(Y))", [("eq", "X", "true")]),
        ])

    integer = System(
        "integer", ["int", "bool"],
        {"0": "int", "s": "int -> int", "p": "int -> int",
         "true": "bool", "false": "bool"},
        {"nonneg": "int -> bool"},
        {"x": "int", "y": "int"}, {},
        [
            ("s(p(y))", "y", []),
            ("p(s(y))", "y", []),
            ("nonneg(0)", "true", []),
            ("nonneg(s(x))", "true", [("eq", "nonneg(x)", "true")]),
            ("nonneg(p(0))", "false", []),
            ("nonneg(p(x))", "false", [("eq", "nonneg(x)", "false")]),
        ])

    nll = System(
        "not-left-linear", ["nat"],
        {"0": "nat", "s": "nat -> nat", "c": "nat", "d": "nat"},
        {"plus": "nat nat -> nat"},
        {}, {"X": "nat"},
        [
            ("0", "s(0)", []),
            ("plus(X,X)", "c", []),
            ("plus(X,s(X))", "d", []),
        ])

    bk = System(
        "bergstra-klop", ["u"],
        {"d": "u"},
        {"b": "u", "g": "u -> u"},
        {}, {"X": "u"},
        [
            ("b", "g(b)", []),
            ("g(X)", "d", [("eq", "g(X)", "X")]),
        ])

    gram = System(
        "gramlich", ["u"],
        {"a": "u", "c": "u"},
        {"f": "u -> u", "g": "u -> u"},
        {}, {"X": "u"},
        [
            ("a", "c", []),
            ("f(a)", "g(a)", []),
            ("g(X)", "f(c)", [("eq", "f(X)", "g(c)")]),
        ])

    toll = System(
        "toll", ["u"],
        {"c": "u", "d": "u"},
        {"a": "u", "b": "u", "plus": "u u -> u"},
        {}, {"X": "u"},
        [
            ("a", "c", [("eq", "b", "d")]),
            ("b", "d", []),
            ("plus(a,a)", "d", []),
            ("plus(c,X)", "d", [("eq", "plus(X,X)", "d")]),
            ("plus(X,c)", "d", [("eq", "plus(X,X)", "d")]),
        ])

    quasi = System(
        "quasi-over", ["nat", "bool"],
        {"0": "nat", "s": "nat -> nat", "a": "nat",
         "true": "bool", "false": "bool"},
        {"les": "nat nat -> bool", "p": "nat -> bool",
         "f": "nat -> nat", "g": "nat -> nat"},
        {}, {"X": "nat", "Y": "nat"},
        [
            ("s(a)", "a", []),
            ("les(s(X),s(Y))", "les(X,Y)", []),
            ("les(X,X)", "false", []),
            ("les(0,s(Y))", "true", []),
            ("les(X,0)", "false", []),
            ("les(0,a)", "true", []),
            ("les(a,s(Y))", "les(a,Y)", []),
            ("les(s(X),a)", "les(X,a)", []),
            ("p(X)", "true", [("eq", "p(s(X))", "true")]),
            ("p(X)", "true", [("eq", "les(f(X),g(X))", "true")]),
            ("f(X)", "X", []),
            ("g(X)", "s(X)", []),
        ])

    cpw = System(
        "cpw-not-normal", ["u"],
        {"c": "u", "d": "u", "e": "u"},
        {"a": "u", "b": "u", "f": "u -> u", "g": "u -> u", "h": "u -> u"},
        {}, {"X": "u"},
        [
            ("a", "c", []),
            ("b", "d", []),
            ("f(a)", "g(b)", []),
            ("f(c)", "h(c)", []),
            ("g(d)", "h(a)", []),
            ("g(X)", "e", [("eq", "X", "b")]),
            ("h(X)", "e", [("eq", "f(X)", "e")]),
        ])

    asso = System(
        "asso", ["nat"],
        {"0": "nat"},
        {"plus": "nat nat -> nat"},
        {}, {"X": "nat", "Y": "nat", "Z": "nat"},
        [
            ("plus(plus(X,Y),Z)", "plus(X,plus(Y,Z))", []),
        ])

    levy_a = System(
        "levy-a", ["u"],
        {"a": "u", "b": "u", "c": "u", "d": "u"},
        {"plus": "u u -> u", "minus": "u u -> u"},
        {}, {"X": "u"},
        [
            ("a", "c", []),
            ("b", "d", []),
            ("plus(a,a)", "minus(b,b)", []),
            ("plus(c,X)", "plus(X,X)", []),
            ("plus(X,c)", "plus(X,X)", []),
            ("minus(b,b)", "plus(a,a)", []),
            ("minus(d,X)", "minus(X,X)", []),
            ("minus(X,d)", "minus(X,X)", []),
        ])

    levy_b = System(
        "levy-b", ["u"],
        {"c": "u", "d": "u", "plus": "u u -> u", "minus": "u u -> u"},
        {"a": "u", "b": "u"},
        {}, {"X": "u"},
        [
            ("plus(c,X)", "plus(X,X)", []),
            ("plus(X,c)", "plus(X,X)", []),
            ("minus(d,X)", "minus(X,X)", []),
            ("minus(X,d)", "minus(X,X)", []),
            ("a", "c", []),
            ("b", "d", []),
            ("plus(a,a)", "minus(b,b)", []),
            ("minus(b,b)", "plus(a,a)", []),
        ])

    return [member, cp, whl, integer, nll, bk, gram, toll, quasi, cpw,
            asso, levy_a, levy_b]


# Extra terms each system's engine must know about, beyond the automatic
# seeds, so that the frozen queries below are all answerable.
EXTRA_SEEDS = {
    "member": ["mbp(0,cns(0,nil))", "minus(s(0),s(0))",
               "mbp(0,cns(s(0),nil))", "mbp(0,nil)"],
    "cp": ["mbp(0,cns(0,nil))"],
    "while": ["while(false,0)", "while(true,0)", "while(false,s(0))"],
    "integer": ["nonneg(0)", "nonneg(s(0))", "nonneg(s(s(0)))",
                "nonneg(s(s(s(0))))", "nonneg(s(s(s(s(0)))))",
                "nonneg(p(0))", "nonneg(p(p(0)))", "nonneg(p(p(p(0))))",
                "nonneg(p(p(p(p(0)))))", "nonneg(p(p(p(p(p(0))))))"],
    "not-left-linear": ["plus(0,0)"],
    "bergstra-klop": ["b", "g(d)", "g(b)"],
    "gramlich": ["f(a)", "g(c)", "f(c)", "g(a)"],
    "toll": ["plus(a,a)", "plus(c,c)"],
    "quasi-over": ["les(s(a),s(a))", "p(0)"],
    "cpw-not-normal": ["f(a)", "h(c)", "h(a)"],
    "asso": ["plus(plus(0,plus(0,0)),0)", "plus(plus(0,0),plus(0,0))"],
    "levy-a": ["minus(b,b)", "plus(a,a)"],
    "levy-b": ["minus(b,b)", "plus(a,a)"],
}

# Frozen engine queries: (kind, args...) per system, evaluated and written
# into engine.json. Depths: ("fin", n) | "w" | ("w+", n) | "w+w".
ENGINE_QUERIES = {
    "member": [
        ("one_step", "mbp(0,cns(0,nil))", ("w+", 1)),
        ("one_step", "minus(s(0),s(0))", ("w+", 1)),
        ("one_step", "mbp(0,cns(s(0),nil))", "w+w"),
        ("reach", "mbp(0,cns(s(0),nil))", "w+w"),
        ("joinable", "mbp(0,cns(0,nil))", "true", "w+w"),
        ("normal_forms", "mbp(0,cns(0,nil))"),
    ],
    "while": [
        ("one_step", "while(false,0)", "w+w"),
        ("normal_forms", "while(false,s(0))"),
    ],
    "integer": [
        ("one_step", "nonneg(s(0))", ("w+", 1)),
        ("one_step", "nonneg(s(0))", ("w+", 2)),
        ("normal_forms", "nonneg(0)"),
        ("normal_forms", "nonneg(s(0))"),
        ("normal_forms", "nonneg(s(s(0)))"),
        ("normal_forms", "nonneg(s(s(s(0))))"),
        ("normal_forms", "nonneg(s(s(s(s(0)))))"),
        ("normal_forms", "nonneg(p(0))"),
        ("normal_forms", "nonneg(p(p(0)))"),
        ("normal_forms", "nonneg(p(p(p(0))))"),
        ("normal_forms", "nonneg(p(p(p(p(0)))))"),
        ("normal_forms", "nonneg(p(p(p(p(p(0))))))"),
    ],
    "not-left-linear": [
        ("one_step", "plus(0,0)", "w+w"),
        ("joinable", "c", "d", "w+w"),
        ("reach_facts", "plus(0,0)", ["plus(0,0)", "c", "d"], []),
    ],
    "bergstra-klop": [
        ("reach", "g(d)", "w+w"),
        ("joinable", "d", "g(d)", "w+w"),
        ("joinable", "g(b)", "b", "w+w"),
        ("irreducible", "g(d)"),
        ("reach_facts", "b", ["b", "g(b)", "d", "g(d)"], []),
    ],
    "gramlich": [
        ("reach", "f(a)", "w+w"),
        ("reach", "g(c)", "w+w"),
        ("one_step", "g(a)", ("w+", 1)),
        ("one_step", "g(a)", "w+w"),
        ("joinable", "f(c)", "g(c)", "w+w"),
        ("joinable", "f(a)", "g(a)", "w+w"),
        ("irreducible", "g(c)"),
    ],
    "toll": [
        ("one_step", "a", ("w+", 1)),
        ("one_step", "a", ("w+", 2)),
        ("reach", "plus(a,a)", "w+w"),
        ("joinable", "d", "plus(c,c)", "w+w"),
        ("irreducible", "plus(c,c)"),
    ],
    "quasi-over": [
        ("reach", "les(s(a),s(a))", "w+w"),
        ("parallel", "les(s(a),s(a))"),
    ],
    "cpw-not-normal": [
        ("reach", "f(a)", "w+w"),
        ("reach", "h(c)", "w+w"),
        ("joinable", "f(c)", "e", "w+w"),
    ],
    "asso": [
        ("joinable", "plus(plus(0,plus(0,0)),0)",
         "plus(plus(0,0),plus(0,0))", "w+w"),
    ],
    "levy-a": [
        ("one_step", "plus(a,a)", "w+w"),
        ("reach", "minus(b,b)", "w+w"),
        ("joinable", "minus(d,d)", "plus(c,c)", "w+w"),
    ],
    "levy-b": [
        ("one_step", "plus(a,a)", "w+w"),
        ("joinable", "minus(d,d)", "plus(c,c)", "w+w"),
    ],
}

SURVEY_SYSTEMS = {"integer", "gramlich", "asso"}
ASSUME_TERMINATING = {"integer", "gramlich", "asso"}


def depth_str(d):
    if d == "w":
        return "w"
    if d == "w+w":
        return "w+w"
    kind, n = d
    return str(n) if kind == "fin" else "w+%d" % n


def run_queries(sys_, engine, queries):
    out = []
    for q in queries:
        kind = q[0]
        if kind == "one_step":
            t = sys_.parse(q[1])
            edges, complete = engine.one_step(t, q[2])
            out.append({
                "query": "one_step", "term": q[1], "depth": depth_str(q[2]),
                "edges": [{"pos": pos_str(e[0]), "rule": e[1],
                           "to": tstr(e[2]),
                           "stamp": engine.stamp_of(t, e)} for e in edges],
                "complete": complete,
            })
        elif kind == "reach":
            t = sys_.parse(q[1])
            r = engine.reach_info(t, q[2])
            out.append({
                "query": "reach", "term": q[1], "depth": depth_str(q[2]),
                "members": sorted(tstr(m) for m in r["members"]),
                "complete": r["complete"],
            })
        elif kind == "reach_facts":
            t = sys_.parse(q[1])
            r = engine.reach_info(t)
            members = {tstr(m) for m in r["members"]}
            out.append({
                "query": "reach_facts", "term": q[1],
                "contains": q[2], "lacks": q[3],
                "contains_ok": all(m in members for m in q[2]),
                "lacks_ok": all(m not in members for m in q[3]),
                "complete": r["complete"],
            })
        elif kind == "joinable":
            a, b = sys_.parse(q[1]), sys_.parse(q[2])
            out.append({
                "query": "joinable", "t0": q[1], "t1": q[2],
                "depth": depth_str(q[3]),
                "result": engine.joinable(a, b, q[3]),
            })
        elif kind == "irreducible":
            t = sys_.parse(q[1])
            out.append({
                "query": "irreducible", "term": q[1],
                "result": engine.irreducible(t),
            })
        elif kind == "normal_forms":
            t = sys_.parse(q[1])
            forms, complete = engine.normal_forms(t)
            out.append({
                "query": "normal_forms", "term": q[1],
                "forms": [tstr(f) for f in forms], "complete": complete,
            })
        elif kind == "parallel":
            t = sys_.parse(q[1])
            res = engine.parallel_reducts(t)
            out.append({
                "query": "parallel_reducts", "term": q[1],
                "results": [tstr(m) for m in res],
            })
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="tests/fixtures")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    peaks_fx, engine_fx, witness_fx, survey_fx, criteria_fx = {}, {}, {}, {}, {}

    for sys_ in make_systems():
        sid = sys_.sid
        peaks = critical_peaks(sys_)
        canons = [canonical_peak(pk) for pk in peaks]

        seeds = []
        for s in EXTRA_SEEDS.get(sid, []):
            seeds.append(sys_.parse(s))
        for sort in sorted(sys_.sorts):
            seeds.extend(sys_.ground_terms(sort, 3))
        for pk in peaks:
            for c in pk["c0"] + pk["c1"]:
                for t in c[1:]:
                    if is_ground(t):
                        seeds.append(t)
        # Survey instance terms (all assignments, filtered later).
        for pk in peaks:
            vs = []
            for t in [pk["peak"], pk["t0"], pk["t1"]]:
                term_vars(t, vs)
            for c in pk["c0"] + pk["c1"]:
                for t in c[1:]:
                    term_vars(t, vs)
            vs.sort(key=lambda v: v[1])
            pools = [sys_.pure_cons_ground_terms(v[3], 3) for v in vs]
            for combo in itertools.product(*pools):
                phi = {v[1]: t for v, t in zip(vs, combo)}
                for t in [pk["peak"], pk["t0"], pk["t1"]]:
                    seeds.append(apply_sub(phi, t))
                for c in pk["c0"] + pk["c1"]:
                    for t in c[1:]:
                        seeds.append(apply_sub(phi, t))
                for x in pk["outer_lhs_vars"]:
                    seeds.append(apply_sub(phi, apply_sub(pk["sigma"], x)))
        # Rule condition ground sides (normality checks).
        for r in sys_.rules:
            for c in r["conds"]:
                for t in c[1:]:
                    if is_ground(t):
                        seeds.append(t)

        engine = Engine(sys_, seeds)

        comp = [peak_complementary(sys_, pk, engine, weak=False)
                for pk in peaks]
        weak = [peak_complementary(sys_, pk, engine, weak=True)
                for pk in peaks]

        peaks_fx[sid] = {
            "count": len(peaks),
            "peaks": [{
                "rule0": pk["rule0"], "rule1": pk["rule1"],
                "pos": pos_str(pk["pos"]),
                "overlay": not pk["pos"],
                "form": "(%d,%d)" % (pk["lam0"], pk["lam1"]),
                "peak": tstr(cn["peak"]),
                "t0": tstr(cn["t0"]), "c0": sys_.cond_strs(cn["c0"]),
                "t1": tstr(cn["t1"]), "c1": sys_.cond_strs(cn["c1"]),
                "complementary": c, "weakly_complementary": w,
            } for pk, cn, c, w in zip(peaks, canons, comp, weak)],
        }

        engine_fx[sid] = {
            "strata": engine.strata(),
            "queries": run_queries(sys_, engine, ENGINE_QUERIES.get(sid, [])),
        }

        crit = run_criteria(
            sys_, engine, peaks, canons, comp, weak,
            assume_term=sid in ASSUME_TERMINATING)
        criteria_fx[sid] = {k: v for k, v in crit.items() if k != "survey"}

        if crit["witness"]:
            witness_fx[sid] = crit["witness"]
        if crit["survey"] is not None and sid in SURVEY_SYSTEMS:
            survey_fx[sid] = crit["survey"]

        # -- stdout summary ------------------------------------------------
        print("== %s ==" % sid)
        print("  peaks: %d  %s" % (
            len(peaks),
            " ".join("(%d,%d)@%s%s" % (pk["lam0"], pk["lam1"],
                                       pos_str(pk["pos"]),
                                       "+ov" if not pk["pos"] else "")
                     for pk in peaks)))
        for i, (pk, cn) in enumerate(zip(peaks, canons)):
            print("    [%d] r%d->r%d @%s  t0=%s %s  t1=%s %s  comp=%s weak=%s"
                  % (i, pk["rule0"], pk["rule1"], pos_str(pk["pos"]),
                     tstr(cn["t0"]), sys_.cond_strs(cn["c0"]),
                     tstr(cn["t1"]), sys_.cond_strs(cn["c1"]),
                     comp[i], weak[i]))
        st = engine.strata()
        print("  strata: fin=%d%s omega=%d%s  universe=%d" % (
            st["fin_layers"], "*" if st["fin_stable"] else "!",
            st["omega_layers"], "*" if st["omega_stable"] else "!",
            len(engine.universe)))
        print("  left-linear=%s conservative=%s normality=%s" % (
            crit["left_linear"], crit["conservative_constructors"],
            crit["normality"]["summary"]))
        print("  cons-confluence=%s (%s)  eq-req=%s" % (
            crit["constructor_confluence"]["status"],
            crit["constructor_confluence"]["why"],
            crit["eq_requirement_ok"]))
        print("  verdict=%s criterion=%s" % (crit["verdict"],
                                             crit["criterion"]))
        if crit["witness"]:
            w = crit["witness"]
            print("  witness: seed=%s endpoints=%s route=%s" % (
                w["seed"], w["endpoints"], w["route"]))
            for lbl, d in (("d0", w["derivation0"]), ("d1", w["derivation1"])):
                print("    %s: %s" % (lbl, " ; ".join(
                    "%s -[r%d@%s,%s]-> %s" % (sstep["from"], sstep["rule"],
                                              sstep["pos"], sstep["stamp"],
                                              sstep["to"]) for sstep in d)))
        if crit["survey"] is not None:
            for i, sv in enumerate(crit["survey"]):
                print("  survey peak[%d]: %s  %s" % (
                    i, sv["summary"],
                    ["%s:%s" % (json.dumps(inst["phi"]), inst["status"])
                     for inst in sv["instances"]]))
        sys.stdout.flush()

    def dump(name, obj):
        path = os.path.join(args.out, name)
        with open(path, "w") as f:
            json.dump(obj, f, indent=1, sort_keys=True)
            f.write("\n")
        print("wrote %s" % path)

    dump("peaks.json", peaks_fx)
    dump("engine.json", engine_fx)
    dump("witness.json", witness_fx)
    dump("survey.json", survey_fx)
    dump("criteria.json", criteria_fx)


if __name__ == "__main__":
    main()
