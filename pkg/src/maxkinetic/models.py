"""Kinetic interaction models in the scaled Fourier or Laplace variable.

A model carries a pair kernel G with scaling maps (a, b), a background
kernel H with map c, and normalization mass(G) + mass(H) = 1 so that the
gain operator fixes the constant state.  The multilinear form flattens
the same data into a list of terms
    int prod_j u(m_j(s) x) dK(s),
which is what the numerics consume; general n-linear atomic models are
built directly in that form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernels import AffineMap, SKernel, make_factor

_MASS_TOL = 1e-12
EMPTY_KERNEL = SKernel()


@dataclass(frozen=True)
class MultilinearTerm:
    """One gain term: kernel K on [0,1] with an affine scaling map per factor."""

    kernel: SKernel
    maps: tuple

    @property
    def arity(self) -> int:
        return len(self.maps)

    def support_radius(self) -> float:
        """Largest scaling value any factor map reaches on the kernel support."""
        r = 0.0
        for m in self.maps:
            if self.kernel.scale > 0.0:
                r = max(r, m.max01)
            for s, w in self.kernel.atoms:
                if w > 0.0:
                    r = max(r, float(m(s)))
        return r


@dataclass(frozen=True)
class MultilinearOperator:
    """Normalized collection of multilinear gain terms."""

    terms: tuple
    name: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def total_mass(self, n_quad: int = 64) -> float:
        return sum(t.kernel.mass(n_quad) for t in self.terms)

    def support_radius(self) -> float:
        return max(t.support_radius() for t in self.terms)

    def term_weights(self, n_quad: int = 64):
        """(arity, mass) per term; masses sum to 1 for a valid operator."""
        return [(t.arity, t.kernel.mass(n_quad)) for t in self.terms]

    @property
    def max_arity(self) -> int:
        return max(t.arity for t in self.terms)

    def validate(self, n_quad: int = 64, tol: float = 1e-9) -> None:
        m = self.total_mass(n_quad)
        if abs(m - 1.0) > tol:
            raise ValueError(f"total kernel mass {m:.12g} != 1")
        r = self.support_radius()
        for t in self.terms:
            for mp in t.maps:
                mp.validate(r)


@dataclass(frozen=True)
class InteractionModel:
    """Pair kernel G with maps (a, b), background kernel H with map c."""

    d: int
    mode: str
    G: SKernel
    H: SKernel
    a: AffineMap
    b: AffineMap
    c: AffineMap
    name: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in ("fourier", "laplace"):
            raise ValueError(f"unknown mode {self.mode!r}")
        mass = self.G.mass() + self.H.mass()
        if abs(mass - 1.0) > 1e-9:
            raise ValueError(f"mass(G) + mass(H) = {mass:.12g} != 1")

    def support_radius(self) -> float:
        return self.to_multilinear().support_radius()

    def to_multilinear(self) -> MultilinearOperator:
        terms = []
        if not self.G.is_empty:
            terms.append(MultilinearTerm(kernel=self.G, maps=(self.a, self.b)))
        if not self.H.is_empty:
            terms.append(MultilinearTerm(kernel=self.H, maps=(self.c,)))
        return MultilinearOperator(terms=tuple(terms), name=self.name,
                                   params=dict(self.params))


def as_operator(model) -> MultilinearOperator:
    """Accept either representation wherever the numerics need terms."""
    if isinstance(model, MultilinearOperator):
        return model
    if isinstance(model, InteractionModel):
        return model.to_multilinear()
    raise TypeError(f"not a model: {type(model).__name__}")


def _angular_kernel(d: int, left: float, right: float, g="const") -> SKernel:
    """Unit-mass kernel s^left (1-s)^right times a bounded factor g."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    base = SKernel(alpha_left=left, alpha_right=right, scale=1.0,
                   factor=make_factor(g))
    return base.normalized(1.0)


def make_model_A(d: int = 3, g="const") -> InteractionModel:
    """Elastic pair model: maps a(s) = s, b(s) = 1 - s, no background."""
    ex = 0.5 * (d - 3)
    return InteractionModel(
        d=d, mode="fourier",
        G=_angular_kernel(d, ex, ex, g), H=EMPTY_KERNEL,
        a=AffineMap(0.0, 1.0), b=AffineMap(1.0, -1.0), c=AffineMap(1.0),
        name="A", params={},
    )


def make_model_B(d: int = 3, g="const", theta: float = 1.0,
                 m: float = 1.0) -> InteractionModel:
    """Elastic pairs coupled to a cold background (thermostat).

    The background term uses the map c(s) = 1 - beta*s with
    beta = 4m/(1+m)^2; kernel masses split 1/(1+theta) to theta/(1+theta).
    """
    if theta <= 0.0:
        raise ValueError("coupling theta must be positive")
    if m <= 0.0:
        raise ValueError("mass ratio m must be positive")
    ex = 0.5 * (d - 3)
    beta = 4.0 * m / (1.0 + m) ** 2
    base = _angular_kernel(d, ex, ex, g)
    return InteractionModel(
        d=d, mode="fourier",
        G=base.scaled(1.0 / (1.0 + theta)),
        H=base.scaled(theta / (1.0 + theta)),
        a=AffineMap(0.0, 1.0), b=AffineMap(1.0, -1.0),
        c=AffineMap(1.0, -beta),
        name="B", params={"theta": theta, "m": m, "beta": beta},
    )


def make_model_C(d: int = 3, e: float = 1.0) -> InteractionModel:
    """Inelastic pair model with restitution coefficient e in (0, 1]."""
    if not 0.0 < e <= 1.0:
        raise ValueError("restitution coefficient e must lie in (0, 1]")
    if d < 2:
        raise ValueError("dimension must be at least 2")
    ca = 0.25 * (1.0 + e) ** 2
    cb = 0.25 * (1.0 + e) * (3.0 - e)
    return InteractionModel(
        d=d, mode="fourier",
        G=_angular_kernel(d, 0.0, 0.5 * (d - 3)), H=EMPTY_KERNEL,
        a=AffineMap(0.0, ca), b=AffineMap(1.0, -cb), c=AffineMap(1.0),
        name="C", params={"e": e},
    )


def make_atomic_model(atoms, a: AffineMap, b: AffineMap,
                      c: AffineMap = None, mode: str = "laplace",
                      background_atoms=()) -> InteractionModel:
    """Point-kernel model, typically used in the 1-d Laplace variable.

    atoms feed the pair kernel G; background_atoms (with map c) feed H.
    Total mass must normalize to 1.
    """
    G = SKernel(atoms=tuple(atoms))
    H = SKernel(atoms=tuple(background_atoms))
    if G.is_empty and H.is_empty:
        raise ValueError("model needs at least one atom")
    total = G.mass() + H.mass()
    if total <= 0.0:
        raise ValueError("atomic model has zero mass")
    if abs(total - 1.0) > _MASS_TOL:
        G = G.scaled(1.0 / total) if not G.is_empty else G
        H = H.scaled(1.0 / total) if not H.is_empty else H
    return InteractionModel(
        d=1, mode=mode, G=G, H=H,
        a=a, b=b, c=c if c is not None else AffineMap(1.0),
        name="atomic", params={},
    )


def make_multilinear(entries, name: str = "multilinear") -> MultilinearOperator:
    """General atomic operator from entries (weight, (c_1, ..., c_n))."""
    terms = []
    total = 0.0
    for w, coeffs in entries:
        total += w
        k = SKernel(atoms=((0.0, float(w)),))
        maps = tuple(AffineMap(float(ci)) for ci in coeffs)
        terms.append(MultilinearTerm(kernel=k, maps=maps))
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"term weights sum to {total:.12g}, expected 1")
    op = MultilinearOperator(terms=tuple(terms), name=name)
    op.validate()
    return op
