"""Finite-level machinery: SL2/PSL2 over Z/NZ, congruence subgroups containing
the scalar kernel, coset actions and their permutation characters, nu-indexed
normal forms, and the prime-power factorization of a composite level.

A congruence subgroup here is always the full preimage of its image mod N, so
everything is represented inside the finite group SL2(Z/NZ); the projective
quotient identifies the scalars alpha*I with alpha^2 = 1 mod N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .matrix_corr import HyperbolicMatrix
from .pell import is_discriminant

Mat = tuple[int, int, int, int]

_S: Mat = None  # placeholder, generators depend on N
_CONJ_BOUND = 10**6
_COSET_BOUND = 10**5


def _mmul(m1: Mat, m2: Mat, N: int) -> Mat:
    a, b, c, d = m1
    e, f, g, h = m2
    return ((a * e + b * g) % N, (a * f + b * h) % N, (c * e + d * g) % N, (c * f + d * h) % N)


def _minv(m: Mat, N: int) -> Mat:
    a, b, c, d = m
    return (d % N, -b % N, -c % N, a % N)


def _generators(N: int) -> tuple[Mat, Mat]:
    return ((0, (N - 1) % N, 1 % N, 0), (1 % N, 1 % N, 0, 1 % N))


@lru_cache(maxsize=None)
def scalar_sqrt_one(N: int) -> frozenset:
    """{alpha in (Z/NZ)* : alpha^2 = 1 mod N}."""
    if N < 1:
        raise ValueError("level must be positive")
    return frozenset(a for a in range(N) if (a * a - 1) % N == 0) or frozenset({0})


@lru_cache(maxsize=None)
def square_class_reps(N: int) -> tuple[int, ...]:
    """Representatives of (Z/NZ)* modulo squares, smallest first (so 1 leads)."""
    if N < 1:
        raise ValueError("level must be positive")
    if N == 1:
        return (0,)
    units = [a for a in range(1, N) if math.gcd(a, N) == 1]
    squares = {a * a % N for a in units}
    reps, covered = [], set()
    for a in units:
        if a in covered:
            continue
        reps.append(a)
        covered.update(a * s % N for s in squares)
    return tuple(reps)


def index_hat(N: int) -> int:
    """|PSL2(Z/NZ)| = prod_{p^r || N} p^(3r-2)(p^2-1) / #{alpha : alpha^2 = 1}."""
    if N < 2:
        raise ValueError("level must be at least 2")
    total = 1
    n = N
    p = 2
    while n > 1:
        if n % p == 0:
            r = 0
            while n % p == 0:
                n //= p
                r += 1
            total *= p ** (3 * r - 2) * (p * p - 1)
        p += 1 if p == 2 else 2
    q, rem = divmod(total, len(scalar_sqrt_one(N)))
    assert rem == 0
    return q


@lru_cache(maxsize=None)
def sl2_order(N: int) -> int:
    return index_hat(N) * len(scalar_sqrt_one(N)) if N > 1 else 1


@lru_cache(maxsize=None)
def sl2_elements(N: int) -> tuple[Mat, ...]:
    """All of SL2(Z/NZ), enumerated deterministically."""
    if N == 1:
        return ((0, 0, 0, 0),)
    out = []
    for a in range(N):
        g = math.gcd(a, N)
        for b in range(N):
            for c in range(N):
                need = (1 + b * c) % N
                if need % g:
                    continue
                if g == 1:
                    out.append((a, b, c, need * pow(a, -1, N) % N))
                else:
                    Ng = N // g
                    d0 = (need // g) * pow(a // g, -1, Ng) % Ng if a else None
                    if a == 0:
                        if need % N == 0:
                            # b*c = -1 mod N; any d works
                            out.extend((a, b, c, d) for d in range(N))
                        continue
                    out.extend((a, b, c, d) for d in range(d0, N, Ng))
    assert len(out) == sl2_order(N)
    return tuple(out)


def psl_canon(m: Mat, N: int) -> Mat:
    """Canonical representative of m modulo scalars alpha with alpha^2 = 1."""
    return min(
        ((lam * m[0]) % N, (lam * m[1]) % N, (lam * m[2]) % N, (lam * m[3]) % N)
        for lam in scalar_sqrt_one(N)
    )


@dataclass(frozen=True)
class ModMatrix:
    """An SL2 matrix over Z/NZ."""

    a: int
    b: int
    c: int
    d: int
    level: int

    def __post_init__(self):
        N = self.level
        if N < 1:
            raise ValueError("level must be positive")
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if not 0 <= v < max(N, 1):
                object.__setattr__(self, name, v % N)
        if (self.a * self.d - self.b * self.c - 1) % N != 0:
            raise ValueError("determinant must be 1 mod N")

    def entries(self) -> Mat:
        return (self.a, self.b, self.c, self.d)


def _as_mat(gamma, N: int) -> Mat:
    if isinstance(gamma, ModMatrix):
        if gamma.level != N:
            raise ValueError(f"level mismatch: {gamma.level} != {N}")
        return gamma.entries()
    if isinstance(gamma, HyperbolicMatrix):
        a, b, c, d = gamma.entries()
        return (a % N, b % N, c % N, d % N)
    if isinstance(gamma, tuple) and len(gamma) == 4:
        return tuple(x % N for x in gamma)
    raise TypeError(f"cannot interpret {gamma!r} as a matrix mod {N}")


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, as sorted (length, multiplicity) pairs."""

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_lengths(cls, lengths) -> "CycleType":
        counts = {}
        for m in lengths:
            counts[m] = counts.get(m, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def from_permutation(cls, perm: tuple[int, ...]) -> "CycleType":
        seen = [False] * len(perm)
        lengths = []
        for i in range(len(perm)):
            if seen[i]:
                continue
            j, m = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                m += 1
            lengths.append(m)
        return cls.from_lengths(lengths)

    @property
    def degree(self) -> int:
        return sum(m * n for m, n in self.pairs)

    def fixed_points(self, j: int = 1) -> int:
        """Fixed points of the j-th power of any permutation of this type."""
        return sum(m * n for m, n in self.pairs if j % m == 0)

    def __iter__(self):
        return iter(self.pairs)


class CongruenceSubgroup:
    """A level-N subgroup containing the scalar kernel, represented by its
    image inside SL2(Z/NZ)."""

    def __init__(self, kind: str, level: int, membership, validate: bool = True):
        self.kind = kind
        self.level = level
        self.membership = membership
        self._members = None
        if validate and kind != "full":
            self._validate()

    def __repr__(self):
        return f"CongruenceSubgroup(kind={self.kind!r}, level={self.level})"

    def contains(self, gamma) -> bool:
        if self.kind == "full":
            return True
        return self.membership(_as_mat(gamma, self.level))

    def members(self) -> tuple[Mat, ...]:
        """All SL2(Z/NZ) matrices in the subgroup (scalar multiples included)."""
        if self._members is None:
            if self.kind == "full":
                self._members = sl2_elements(self.level)
            else:
                self._members = tuple(m for m in sl2_elements(self.level) if self.membership(m))
        return self._members

    @property
    def index(self) -> int:
        """[SL2(Z) : Gamma] = [PSL2(Z/NZ) : image]."""
        if self.kind == "full":
            return 1
        q, rem = divmod(sl2_order(self.level), len(self.members()))
        assert rem == 0
        return q

    def _validate(self):
        N = self.level
        mem = self.members()
        if not mem:
            raise ValueError("empty membership predicate")
        memset = frozenset(mem)
        for lam in scalar_sqrt_one(N):
            if (lam % N, 0, 0, lam % N) not in memset and N > 1:
                raise ValueError(f"subgroup does not contain the scalar {lam}*I mod {N}")
        # closure; exhaustive when affordable, sampled otherwise
        if len(mem) ** 2 <= 4_000_000:
            pairs = ((x, y) for x in mem for y in mem)
        else:
            import random

            rng = random.Random(0)
            pairs = ((rng.choice(mem), rng.choice(mem)) for _ in range(200_000))
        for x, y in pairs:
            if _mmul(x, y, N) not in memset:
                raise ValueError(f"membership not closed under multiplication: {x} * {y}")


def make_subgroup(kind: str, N: int, generators=None, predicate=None) -> CongruenceSubgroup:
    """Standard congruence subgroups at level N.

    kinds: 'gamma0' (lower-left entry 0 mod N), 'gamma1pm' (the group generated
    by the image of Gamma1(N) together with the scalar kernel), 'gammahat'
    (the scalar kernel itself), 'full', and 'custom' (explicit generator
    matrices or a membership predicate; the scalar kernel is always adjoined).
    """
    if N < 1:
        raise ValueError("level must be positive")
    if kind == "full":
        return CongruenceSubgroup("full", N, lambda m: True, validate=False)
    if kind == "gamma0":
        return CongruenceSubgroup("gamma0", N, lambda m: m[2] % N == 0, validate=False)
    if kind == "gamma1pm":
        scal = scalar_sqrt_one(N)
        return CongruenceSubgroup(
            "gamma1pm",
            N,
            lambda m: m[2] % N == 0 and m[0] == m[3] and m[0] in scal,
            validate=False,
        )
    if kind == "gammahat":
        scal = scalar_sqrt_one(N)
        return CongruenceSubgroup(
            "gammahat",
            N,
            lambda m: m[1] % N == 0 and m[2] % N == 0 and m[0] == m[3] and m[0] in scal,
            validate=False,
        )
    if kind == "custom":
        if generators is not None:
            gens = [_as_mat(g, N) for g in generators]
            for g in gens:
                if (g[0] * g[3] - g[1] * g[2] - 1) % N != 0:
                    raise ValueError(f"generator {g} has determinant != 1 mod {N}")
            members = _closure(gens, N)
            return CongruenceSubgroup("custom", N, members.__contains__, validate=True)
        if predicate is not None:
            return CongruenceSubgroup("custom", N, predicate, validate=True)
        raise ValueError("custom subgroup needs generators or a predicate")
    raise ValueError(f"unknown subgroup kind {kind!r}")


def _closure(gens: list[Mat], N: int) -> frozenset:
    """Subgroup of SL2(Z/NZ) generated by gens and the scalar kernel."""
    start = [(lam % N, 0, 0, lam % N) for lam in scalar_sqrt_one(N)]
    seen = set(start)
    frontier = list(seen)
    gens = list(gens) + [_minv(g, N) for g in gens]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = _mmul(m, g, N)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return frozenset(seen)


class CosetAction:
    """Right cosets of a subgroup image in PSL2(Z/NZ), with the permutation
    action of matrices by right multiplication."""

    def __init__(self, subgroup: CongruenceSubgroup, bound: int = _COSET_BOUND):
        self.subgroup = subgroup
        self.level = N = subgroup.level
        if subgroup.kind == "full" or N == 1:
            self.cosets = [(1 % N, 0, 0, 1 % N)]
            self._index = {psl_canon(self.cosets[0], N): 0}
            self._table = None
            return
        members = subgroup.members()
        self._members = members
        self.cosets = []
        self._index = {}
        ident = (1, 0, 0, 1)
        self._add_coset(ident)
        gens = _generators(N)
        frontier = [ident]
        while frontier:
            nxt = []
            for rep in frontier:
                for g in gens:
                    cand = _mmul(rep, g, N)
                    if self._coset_key(cand) not in self._index:
                        self._add_coset(cand)
                        nxt.append(cand)
                        if len(self.cosets) > bound:
                            raise ValueError(f"coset count exceeds bound {bound}")
            frontier = nxt
        self._table = None
        self._acts = 0
        # small tables are cheap enough to build immediately; larger ones are
        # deferred until repeated use amortizes the construction cost
        self._table_budget = sl2_order(N) // len(scalar_sqrt_one(N)) * len(self.cosets)
        if self._table_budget <= 100_000:
            self._build_table()

    def _coset_key(self, g: Mat) -> Mat:
        N = self.level
        return min(_mmul(h, g, N) for h in self._members)

    def _add_coset(self, rep: Mat):
        self._index[self._coset_key(rep)] = len(self.cosets)
        self.cosets.append(rep)

    def _build_table(self):
        """Permutation of every PSL2(Z/NZ) element, by BFS over the group."""
        N = self.level
        n = len(self.cosets)
        ident = psl_canon((1, 0, 0, 1), N)
        table = {ident: tuple(range(n))}
        gen_perms = {}
        for g in _generators(N):
            gen_perms[g] = tuple(
                self._index[self._coset_key(_mmul(rep, g, N))] for rep in self.cosets
            )
        frontier = [(ident, (1, 0, 0, 1))]
        while frontier:
            nxt = []
            for key, elem in frontier:
                perm = table[key]
                for g, gperm in gen_perms.items():
                    elem2 = _mmul(elem, g, N)
                    key2 = psl_canon(elem2, N)
                    if key2 not in table:
                        table[key2] = tuple(gperm[perm[i]] for i in range(n))
                        nxt.append((key2, elem2))
            frontier = nxt
        self._table = table

    def act(self, gamma) -> tuple[int, ...]:
        """Permutation of coset indices induced by right multiplication."""
        N = self.level
        m = _as_mat(gamma, N)
        if len(self.cosets) == 1:
            return (0,)
        if self._table is None and self._table_budget <= 2_000_000:
            self._acts += 1
            if self._acts > 50:
                self._build_table()
        if self._table is not None:
            return self._table[psl_canon(m, N)]
        return tuple(self._index[self._coset_key(_mmul(rep, m, N))] for rep in self.cosets)

    def __len__(self):
        return len(self.cosets)


@lru_cache(maxsize=None)
def _coset_action_cached(kind: str, N: int) -> CosetAction:
    return CosetAction(make_subgroup(kind, N))


def coset_action(subgroup: CongruenceSubgroup, bound: int = _COSET_BOUND) -> CosetAction:
    if subgroup.kind in ("gamma0", "gamma1pm", "gammahat", "full"):
        return _coset_action_cached(subgroup.kind, subgroup.level)
    action = getattr(subgroup, "_coset_action", None)
    if action is None:
        action = CosetAction(subgroup, bound)
        subgroup._coset_action = action
    return action


def char_trace(subgroup: CongruenceSubgroup, gamma) -> int:
    """Trace of the induced permutation character: cosets fixed by gamma."""
    perm = coset_action(subgroup).act(gamma)
    return sum(1 for i, j in enumerate(perm) if i == j)


def cycle_type(subgroup: CongruenceSubgroup, gamma) -> CycleType:
    return CycleType.from_permutation(coset_action(subgroup).act(gamma))


def gamma_nu(t: int, u: int, D: int, nu: int, N: int) -> ModMatrix:
    """The normal-form matrix [[(t+du)/2, (D-d^2)/4 * nu^-1 * u], [nu*u, (t-du)/2]]
    mod N, with d = 0 for odd N and d = D mod 2 for even N."""
    if N < 1:
        raise ValueError("level must be positive")
    if math.gcd(nu, N) != 1:
        raise ValueError(f"nu = {nu} is not invertible mod {N}")
    if (t % N, u % N) in ((2 % N, 0), ((-2) % N, 0)):
        raise ValueError("(t, u) reduces to a trivial solution mod N")
    nu_inv = pow(nu, -1, N)
    if N % 2 == 0:
        delta = D % 2
        a11 = ((t + delta * u) // 2) % N
        a22 = ((t - delta * u) // 2) % N
        a12 = ((D - delta * delta) // 4) * nu_inv * u % N
    else:
        inv2 = pow(2, -1, N)
        a11 = a22 = t * inv2 % N
        a12 = D * pow(4, -1, N) * nu_inv * u % N
    a21 = nu * u % N
    return ModMatrix(a11, a12, a21, a22, N)


@lru_cache(maxsize=None)
def _conjugacy_partition(N: int) -> dict:
    """Map psl_canon(element) -> conjugacy class id in PSL2(Z/NZ)."""
    if sl2_order(N) > _CONJ_BOUND:
        raise ValueError(f"group order {sl2_order(N)} exceeds bound {_CONJ_BOUND}")
    gens = _generators(N)
    gen_invs = [_minv(g, N) for g in gens]
    class_of = {}
    next_id = 0
    for elem in sl2_elements(N):
        key = psl_canon(elem, N)
        if key in class_of:
            continue
        class_of[key] = next_id
        frontier = [key]
        while frontier:
            nxt = []
            for m in frontier:
                for g, gi in zip(gens, gen_invs):
                    conj = psl_canon(_mmul(gi, _mmul(m, g, N), N), N)
                    if conj not in class_of:
                        class_of[conj] = next_id
                        nxt.append(conj)
            frontier = nxt
        next_id += 1
    return class_of


def _class_id(m: Mat, N: int) -> int:
    return _conjugacy_partition(N)[psl_canon(m, N)]


def psl_conjugate(N: int, g1, g2) -> bool:
    """True iff g1 and g2 are conjugate in PSL2(Z/NZ)."""
    m1, m2 = _as_mat(g1, N), _as_mat(g2, N)
    if sl2_order(N) <= _CONJ_BOUND:
        return _class_id(m1, N) == _class_id(m2, N)
    # orbit enumeration from g1 under conjugation by the generators
    gens = _generators(N)
    gen_invs = [_minv(g, N) for g in gens]
    target = psl_canon(m2, N)
    seen = {psl_canon(m1, N)}
    if target in seen:
        return True
    frontier = list(seen)
    while frontier:
        nxt = []
        for m in frontier:
            for g, gi in zip(gens, gen_invs):
                conj = psl_canon(_mmul(gi, _mmul(m, g, N), N), N)
                if conj == target:
                    return True
                if conj not in seen:
                    seen.add(conj)
                    nxt.append(conj)
        frontier = nxt
    return False


@dataclass(frozen=True)
class NuClassSet:
    """Partition of the SL2(Z)-classes with invariants (t, u) by their
    PSL2(Z/NZ) normal form."""

    D: int
    t: int
    u: int
    level: int
    nus: tuple[int, ...]  # realized nu representatives, 1 first
    mu: int
    parts: dict = field(compare=False)  # nu -> list of class indices


def nu_classes(t: int, u: int, N: int) -> NuClassSet:
    """Assign every class with invariants (t, u) to its nu normal form."""
    from .matrix_corr import class_list

    D = (t * t - 4) // (u * u)
    matrices = class_list(t, u)
    # merge square-class representatives whose normal forms are conjugate
    nu_class_ids = {}
    for nu in square_class_reps(N):
        g = gamma_nu(t, u, D, nu, N)
        nu_class_ids[nu] = _class_id(g.entries(), N)
    merged = {}  # class id -> smallest nu
    for nu in sorted(nu_class_ids):
        merged.setdefault(nu_class_ids[nu], nu)
    parts: dict[int, list[int]] = {}
    for i, m in enumerate(matrices):
        cid = _class_id(_as_mat(m, N), N)
        if cid not in merged:
            raise AssertionError(
                f"class {m.entries()} mod {N} is not conjugate to any normal form"
            )
        parts.setdefault(merged[cid], []).append(i)
    nus = tuple(sorted(parts))
    return NuClassSet(D, t, u, N, nus, len(nus), parts)


def nonresidue_shift(alpha: int, p: int) -> int:
    """The least l with 1 + alpha*l^2 a quadratic non-residue mod p (p >= 5, p∤alpha)."""
    if p < 5:
        raise ValueError("p must be at least 5")
    if alpha % p == 0:
        raise ValueError("alpha must be invertible mod p")
    residues = {x * x % p for x in range(1, p)}
    for l in range(1, p):
        if (1 + alpha * l * l) % p not in residues and (1 + alpha * l * l) % p != 0:
            return l
    raise AssertionError("no shift found; should be impossible for p >= 5")


def _least_nonresidue(p: int) -> int:
    residues = {x * x % p for x in range(1, p)}
    for eta in range(2, p):
        if eta % p not in residues:
            return eta
    raise AssertionError(f"no non-residue mod {p}")


def _squarefree_part(n: int) -> int:
    out, d = 1, 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return out * n


def conj2_relations(p: int, r: int, t: int, u: int, D: int) -> list[tuple[int, int, int]]:
    """Predicted conjugacy relations between powers of the normal forms mod p^r,
    as triples (nu_a, k, nu_b) meaning gamma_{nu_a}^k ~ gamma_{nu_b}.

    For p = 2 the case split is on d mod 8 where d = D when the squarefree part
    of D is 1 mod 4 and d = D/4 otherwise.  The relations are predictions to be
    confirmed (or reported) by the verifier; the printed case split is not
    trusted blindly.
    """
    N = p**r
    raw: list[tuple[int, int, int]] = []
    if p == 2:
        d = D if _squarefree_part(D) % 4 == 1 else D // 4
        if d % 4 == 1:
            raw = [(1, 1, 3), (1, 1, 5), (1, 1, 7)]
        elif d % 4 == 3:
            raw = [(1, 1, 5), (3, 1, 7), (1, 3, 3), (3, 3, 1)]
        elif d % 8 == 2:
            raw = [(1, 1, 7), (3, 1, 5), (1, 3, 3), (3, 3, 1)]
        elif d % 8 == 6:
            raw = [(1, 1, 3), (5, 1, 7), (1, 5, 5), (5, 5, 1)]
        elif d % 8 == 4:
            raw = [(1, 1, 5), (3, 1, 7), (1, 3, 3), (3, 3, 1)]
        else:  # d = 0 mod 8
            raw = [(1, nu, nu) for nu in (3, 5, 7)] + [(nu, nu, 1) for nu in (3, 5, 7)]
    else:
        eta = _least_nonresidue(p)
        if D % p != 0:
            raw = [(1, 1, eta)]
        else:
            mu = pow(eta, -1, N)
            raw = [(1, eta, eta), (eta, mu, 1)]
    # reduce nu labels mod the level and drop degenerate entries
    out, seen = [], set()
    for na, k, nb in raw:
        na %= N
        nb %= N
        if na == 0 or nb == 0 or (na == nb and k == 1):
            continue
        if (na, k, nb) not in seen:
            seen.add((na, k, nb))
            out.append((na, k, nb))
    return out


def _project(m: Mat, M: int) -> Mat:
    return tuple(x % M for x in m)


def decompose_level(subgroup: CongruenceSubgroup) -> list[CongruenceSubgroup]:
    """Subgroups of prime-power level whose intersection is the input: the
    image of the subgroup mod each p^r || N."""
    N = subgroup.level
    factors = []
    n, p = N, 2
    while n > 1:
        if n % p == 0:
            pr = 1
            while n % p == 0:
                n //= p
                pr *= p
            factors.append(pr)
        p += 1 if p == 2 else 2
    if len(factors) <= 1:
        return [subgroup]
    out = []
    for pr in factors:
        image = frozenset(_project(m, pr) for m in subgroup.members())
        out.append(CongruenceSubgroup("custom", pr, image.__contains__, validate=False))
    return out
