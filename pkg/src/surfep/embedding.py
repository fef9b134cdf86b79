"""Finite split embedding problems over a surface group, and their checkable
solution certificates.

The problem data is (A, B, alpha, gamma, beta_bar): a surjection alpha with
section gamma and a surjective reference map beta_bar from the genus-g
surface group to B, given as a surface tuple.  A subgroup N of the surface
group is encoded through a finite quotient: a tuple nu into Q plus a
subgroup S of Q, with N = nu^-1(S); every membership or image question the
solver asks is then decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .errors import (
    BetaNotSurjective,
    GenusMismatch,
    NotASolution,
)
from .groups import (
    ActionSpec,
    FiniteGroup,
    GroupHom,
    SubgroupHandle,
    direct_product,
    kernel,
    semidirect_product,
    subgroup_closure,
)
from .surface import (
    SurfaceTuple,
    Word,
    evaluate_word,
    relation_value,
    tuple_image,
)


@dataclass(frozen=True)
class SplitEP:
    """A finite split embedding problem for the genus-g surface group."""

    A: FiniteGroup
    B: FiniteGroup
    alpha: GroupHom
    gamma: GroupHom
    beta_bar: SurfaceTuple
    genus: int

    def __post_init__(self):
        if not self.alpha.is_surjective:
            missing = next(
                b for b in self.B.elements() if b not in set(self.alpha.map)
            )
            raise ValueError(f"alpha misses {missing}")
        if any(self.alpha.map[self.gamma.map[b]] != b for b in self.B.elements()):
            raise ValueError("gamma is not a section of alpha")
        if self.beta_bar.target != self.B or self.beta_bar.genus != self.genus:
            raise GenusMismatch(self.genus, self.beta_bar.genus)
        if tuple_image(self.beta_bar).order != self.B.order:
            raise BetaNotSurjective()

    @property
    def kernel_subgroup(self) -> SubgroupHandle:
        return kernel(self.alpha)

    def with_beta_bar(self, beta_bar: SurfaceTuple) -> "SplitEP":
        return replace(self, beta_bar=beta_bar)


def make_split_ep(
    k_group: FiniteGroup,
    h_group: FiniteGroup,
    action: ActionSpec,
    beta_bar: SurfaceTuple,
    genus: Optional[int] = None,
) -> SplitEP:
    """Build A = K x| H with its canonical projection and section."""
    if genus is None:
        genus = beta_bar.genus
    sd = semidirect_product(k_group, h_group, action)
    return SplitEP(
        A=sd.group,
        B=h_group,
        alpha=sd.alpha,
        gamma=sd.gamma,
        beta_bar=beta_bar,
        genus=genus,
    )


@dataclass(frozen=True)
class SubgroupSpec:
    """N = nu^-1(S): a subgroup of the surface group cut out by a finite
    quotient channel."""

    Q: FiniteGroup
    nu: SurfaceTuple
    S: SubgroupHandle

    def __post_init__(self):
        if self.nu.target != self.Q:
            raise ValueError("nu must map into Q")
        if self.S.parent != self.Q:
            raise ValueError("S must be a subgroup of Q")

    @property
    def genus(self) -> int:
        return self.nu.genus

    def with_nu(self, nu: SurfaceTuple) -> "SubgroupSpec":
        return replace(self, nu=nu)


def word_in_n(spec: SubgroupSpec, word: Word) -> bool:
    return evaluate_word(spec.nu, word) in spec.S


def image_of_restriction(t: SurfaceTuple, spec: SubgroupSpec) -> SubgroupHandle:
    """The image of N = nu^-1(S) under the homomorphism given by t.

    Close the pairs (t(gen), nu(gen)) inside target x Q; the closure T is the
    image of the surface group under the pair map (t, nu).  An element a of
    the target lies in t(N) exactly when some (a, s) with s in S lies in T:
    such a pair is the image of a single surface-group element, which nu
    sends into S, i.e. an element of N; conversely every element of N pairs
    its t-image with an S-element.  Since S is a subgroup, N is a subgroup
    and so is the returned set (SubgroupHandle re-verifies closure).
    """
    if t.genus != spec.nu.genus:
        raise GenusMismatch(t.genus, spec.nu.genus)
    prod = direct_product(t.target, spec.Q)
    seeds = [
        prod.encode(a, q)
        for a, q in zip(
            (*t.ximg, *t.yimg), (*spec.nu.ximg, *spec.nu.yimg)
        )
    ]
    fiber = subgroup_closure(prod.group, seeds)
    s_members = set(spec.S.members)
    members = sorted(
        {prod.decode(p)[0] for p in fiber.members if prod.decode(p)[1] in s_members}
    )
    return SubgroupHandle(t.target, tuple(members))


def subgroup_image_under(
    beta_bar: SurfaceTuple, spec: SubgroupSpec
) -> SubgroupHandle:
    """beta(N) as a subgroup of B, via the fiber product in B x Q."""
    return image_of_restriction(beta_bar, spec)


def claim_proper(
    ep: SplitEP, phi: SurfaceTuple, extra_image_elements: Sequence[int] = ()
) -> bool:
    """Kernel-containment criterion for surjectivity.

    Requires phi to be a solution (compatibility with beta_bar checked
    generatorwise); returns True iff Ker(alpha) lies in the closure of the
    phi-images together with the extra evidence elements.  Because beta_bar
    is surjective, that closure then maps onto B, so containing the kernel
    forces it to be all of A.
    """
    for i in range(ep.genus):
        if ep.alpha.map[phi.ximg[i]] != ep.beta_bar.ximg[i]:
            raise NotASolution(f"x{i + 1}")
        if ep.alpha.map[phi.yimg[i]] != ep.beta_bar.yimg[i]:
            raise NotASolution(f"y{i + 1}")
    closure = subgroup_closure(
        ep.A, [*phi.ximg, *phi.yimg, *extra_image_elements]
    )
    cset = set(closure.members)
    return all(k in cset for k in ep.kernel_subgroup.members)


# --- certificates -------------------------------------------------------------

@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class KernelWitness:
    """A word (in the certificate basis) whose phi-value is one kernel
    generator; for relative problems both membership orientations of the
    word in N are recorded."""

    word: Word
    value: int
    in_n_left: Optional[bool] = None   # the word itself lies in N
    in_n_right: Optional[bool] = None  # the reversed product lies in N


@dataclass(frozen=True)
class RelativeEvidence:
    q_order: int
    s_members: tuple[int, ...]
    beta_n_image: tuple[int, ...]
    # (basis position i, x1^-1 x_i in N, x_i x1^-1 in N)
    memberships: tuple[tuple[int, bool, bool], ...] = ()
    offending_index: Optional[int] = None


@dataclass(frozen=True)
class EtaSummary:
    s: int
    n: int
    m: int
    kgens: tuple[int, ...]
    selected: tuple[int, ...]


@dataclass(frozen=True)
class SolutionCertificate:
    """A claimed solution plus everything needed to re-check it from scratch.

    The candidate images and the reference map are expressed on the
    certificate basis; basis_x_words / basis_y_words define that basis in
    the original one (identity words when no rewriting happened).
    """

    genus: int
    phi_x: tuple[int, ...]
    phi_y: tuple[int, ...]
    basis_x_words: tuple[Word, ...]
    basis_y_words: tuple[Word, ...]
    is_solution: bool
    is_proper: bool
    outcome: str  # "proper" | "solution" | "invalid" | "not_reduced"
    checks: tuple[CheckRecord, ...]
    eta: Optional[EtaSummary] = None
    witnesses: tuple[KernelWitness, ...] = ()
    relative: Optional[RelativeEvidence] = None

    def failed_checks(self) -> tuple[CheckRecord, ...]:
        return tuple(c for c in self.checks if not c.passed)


def verify_solution(
    ep: SplitEP,
    phi_x: Sequence[int],
    phi_y: Sequence[int],
    relative: Optional[SubgroupSpec] = None,
    witnesses: Sequence[KernelWitness] = (),
    basis_x_words: Optional[Sequence[Word]] = None,
    basis_y_words: Optional[Sequence[Word]] = None,
) -> SolutionCertificate:
    """Check a candidate tuple against the problem and record every result.

    The candidate and ep.beta_bar (and relative.nu, if given) must refer to
    the same basis.  Nothing is thrown for a failed check; failures land in
    the certificate.
    """
    from .surface import identity_basis_words  # local to avoid cycle noise

    checks: list[CheckRecord] = []
    g = ep.genus
    if basis_x_words is None or basis_y_words is None:
        basis_x_words, basis_y_words = identity_basis_words(g)

    ok_shape = len(phi_x) == g and len(phi_y) == g
    checks.append(CheckRecord("shape", ok_shape, f"genus {g}"))
    if not ok_shape:
        return SolutionCertificate(
            g, tuple(phi_x), tuple(phi_y), tuple(basis_x_words),
            tuple(basis_y_words), False, False, "invalid", tuple(checks),
        )

    value = relation_value(ep.A, phi_x, phi_y)
    ok_relation = value == ep.A.identity
    checks.append(
        CheckRecord("surface_relation", ok_relation, f"product evaluates to {value}")
    )

    ok_compat = True
    for i in range(g):
        if ep.alpha.map[phi_x[i]] != ep.beta_bar.ximg[i]:
            ok_compat = False
            checks.append(CheckRecord("compatibility", False, f"fails at x{i + 1}"))
            break
        if ep.alpha.map[phi_y[i]] != ep.beta_bar.yimg[i]:
            ok_compat = False
            checks.append(CheckRecord("compatibility", False, f"fails at y{i + 1}"))
            break
    if ok_compat:
        checks.append(CheckRecord("compatibility", True, "alpha o phi = beta_bar"))

    is_solution = ok_relation and ok_compat

    # properness, direct route: closure of the images
    closure = subgroup_closure(ep.A, [*phi_x, *phi_y])
    direct_proper = closure.order == ep.A.order
    checks.append(
        CheckRecord(
            "image_closure",
            direct_proper,
            f"closure order {closure.order} of {ep.A.order}",
        )
    )

    # claim route when witnesses are supplied: each witness word must
    # evaluate to its recorded value, and the values must generate a
    # subgroup containing Ker(alpha)
    if witnesses:
        phi_tuple = SurfaceTuple(ep.A, g, tuple(phi_x), tuple(phi_y))
        wit_ok = True
        detail = ""
        for w in witnesses:
            got = evaluate_word(phi_tuple, w.word)
            if got != w.value:
                wit_ok = False
                detail = f"word {w.word} evaluates to {got}, recorded {w.value}"
                break
        checks.append(CheckRecord("witness_words", wit_ok, detail))
        if wit_ok:
            kc = subgroup_closure(ep.A, [w.value for w in witnesses])
            kset = set(kc.members)
            contained = all(k in kset for k in ep.kernel_subgroup.members)
            checks.append(
                CheckRecord(
                    "kernel_containment",
                    contained,
                    "witness values generate a subgroup containing Ker(alpha)",
                )
            )

    is_proper = is_solution and direct_proper
    relative_evidence = None
    if relative is not None:
        ok_genus = relative.genus == g
        checks.append(CheckRecord("relative_genus", ok_genus, ""))
        if ok_genus:
            bn = image_of_restriction(ep.beta_bar, relative)
            bn_full = bn.order == ep.B.order
            checks.append(
                CheckRecord(
                    "beta_n_surjective", bn_full, f"|beta(N)| = {bn.order}"
                )
            )
            an = image_of_restriction(
                SurfaceTuple(ep.A, g, tuple(phi_x), tuple(phi_y)), relative
            )
            an_full = an.order == ep.A.order
            checks.append(
                CheckRecord(
                    "relative_image_full", an_full, f"|phi(N)| = {an.order}"
                )
            )
            mem_ok = all(
                (w.in_n_left is not False) and (w.in_n_right is not False)
                for w in witnesses
            )
            checks.append(
                CheckRecord("witness_memberships", mem_ok, "all witness words in N")
            )
            relative_evidence = RelativeEvidence(
                q_order=relative.Q.order,
                s_members=tuple(relative.S.members),
                beta_n_image=tuple(bn.members),
            )
            is_proper = is_solution and bn_full and an_full and mem_ok
        else:
            is_proper = False

    outcome = "proper" if is_proper else ("solution" if is_solution else "invalid")
    return SolutionCertificate(
        genus=g,
        phi_x=tuple(phi_x),
        phi_y=tuple(phi_y),
        basis_x_words=tuple(basis_x_words),
        basis_y_words=tuple(basis_y_words),
        is_solution=is_solution,
        is_proper=is_proper,
        outcome=outcome,
        checks=tuple(checks),
        witnesses=tuple(witnesses),
        relative=relative_evidence,
    )
