"""JSON interchange for groups, tuples, problems, and certificates.

All emitted JSON is canonical (sorted keys, fixed separators, trailing
newline) so identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Optional

from .embedding import (
    CheckRecord,
    EtaSummary,
    KernelWitness,
    RelativeEvidence,
    SolutionCertificate,
    SplitEP,
    SubgroupSpec,
    make_split_ep,
)
from .groups import (
    ActionSpec,
    FiniteGroup,
    GroupHom,
    SubgroupHandle,
    group_from_permutations,
    make_group,
    make_hom,
)
from .surface import SurfaceTuple, Word, make_surface_tuple, parse_word

CERTIFICATE_FORMAT = "surfep-certificate-v1"


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def instance_hash(resolved_problem: dict) -> str:
    return hashlib.sha256(canonical_json(resolved_problem).encode()).hexdigest()


# --- groups -------------------------------------------------------------------

def group_to_json(group: FiniteGroup) -> dict:
    obj: dict[str, Any] = {
        "order": group.order,
        "table": [list(row) for row in group.mul],
    }
    if group.labels is not None:
        obj["labels"] = list(group.labels)
    return obj


def group_from_json(obj: dict) -> FiniteGroup:
    has_table = "table" in obj
    has_perms = "permutations" in obj
    if has_table == has_perms:
        raise ValueError("group object needs exactly one of 'table' or 'permutations'")
    labels = obj.get("labels")
    if has_table:
        table = obj["table"]
        if table and isinstance(table[0], int):
            # row-major flat list
            n = obj["order"]
            if len(table) != n * n:
                raise ValueError("flat table length must be order squared")
            table = [table[i * n : (i + 1) * n] for i in range(n)]
        group = make_group(table, labels=labels)
    else:
        group, _ = group_from_permutations(obj["permutations"])
        if labels is not None:
            group = FiniteGroup(
                group.order, group.identity, group.mul, group.inv, tuple(labels)
            )
    if "order" in obj and obj["order"] != group.order:
        raise ValueError(
            f"declared order {obj['order']} but the group has order {group.order}"
        )
    return group


def _resolve_group(spec: Any, groups: dict[str, FiniteGroup]) -> FiniteGroup:
    if isinstance(spec, str):
        if spec not in groups:
            raise ValueError(f"unknown group name {spec!r}")
        return groups[spec]
    return group_from_json(spec)


# --- homs and tuples ----------------------------------------------------------

def hom_from_json(obj: dict, groups: dict[str, FiniteGroup]) -> GroupHom:
    return make_hom(
        _resolve_group(obj["domain"], groups),
        _resolve_group(obj["codomain"], groups),
        obj["map"],
    )


def tuple_from_json(obj: dict, groups: dict[str, FiniteGroup]) -> SurfaceTuple:
    target = _resolve_group(obj["target"], groups)
    t = make_surface_tuple(target, obj["x"], obj["y"])
    if "genus" in obj and obj["genus"] != t.genus:
        raise ValueError("declared genus does not match image list length")
    return t


def tuple_to_json(t: SurfaceTuple, target_name: str) -> dict:
    return {
        "target": target_name,
        "genus": t.genus,
        "x": list(t.ximg),
        "y": list(t.yimg),
    }


# --- problems -----------------------------------------------------------------

def relative_from_json(obj: dict, groups: dict[str, FiniteGroup]) -> SubgroupSpec:
    q_group = _resolve_group(obj["Q"], groups)
    nu = make_surface_tuple(q_group, obj["nu"]["x"], obj["nu"]["y"])
    s_handle = SubgroupHandle(q_group, tuple(sorted(set(obj["S"]))))
    return SubgroupSpec(q_group, nu, s_handle)


def problem_from_json(
    obj: dict, groups: dict[str, FiniteGroup]
) -> tuple[SplitEP, Optional[SubgroupSpec]]:
    k_group = _resolve_group(obj["K"], groups)
    h_group = _resolve_group(obj["H"], groups)
    action = ActionSpec(
        h_group, k_group, tuple(tuple(p) for p in obj["action"])
    )
    beta_bar = make_surface_tuple(
        h_group, obj["beta_bar"]["x"], obj["beta_bar"]["y"]
    )
    ep = make_split_ep(k_group, h_group, action, beta_bar, genus=obj.get("genus"))
    relative = None
    if obj.get("relative") is not None:
        relative = relative_from_json(obj["relative"], groups)
    return ep, relative


def resolve_problem_json(obj: dict, groups: dict[str, FiniteGroup]) -> dict:
    """Inline every group reference so the object is self-contained; this is
    what the instance hash covers."""

    def inline(spec):
        return group_to_json(_resolve_group(spec, groups))

    resolved = {
        "genus": obj.get("genus", len(obj["beta_bar"]["x"])),
        "K": inline(obj["K"]),
        "H": inline(obj["H"]),
        "action": [list(p) for p in obj["action"]],
        "beta_bar": {
            "x": list(obj["beta_bar"]["x"]),
            "y": list(obj["beta_bar"]["y"]),
        },
    }
    if obj.get("relative") is not None:
        rel = obj["relative"]
        resolved["relative"] = {
            "Q": inline(rel["Q"]),
            "nu": {"x": list(rel["nu"]["x"]), "y": list(rel["nu"]["y"])},
            "S": sorted(set(rel["S"])),
        }
    return resolved


@dataclass(frozen=True)
class Workspace:
    groups: dict[str, FiniteGroup]
    homs: dict[str, GroupHom]
    tuples: dict[str, SurfaceTuple]
    problems: dict[str, dict]            # raw JSON objects, built on demand
    relatives: dict[str, dict]

    def build_problem(self, name: str) -> tuple[SplitEP, Optional[SubgroupSpec]]:
        if name not in self.problems:
            raise ValueError(f"unknown problem {name!r}")
        return problem_from_json(self.problems[name], self.groups)

    def build_relative(self, name: str) -> SubgroupSpec:
        if name not in self.relatives:
            raise ValueError(f"unknown relative spec {name!r}")
        return relative_from_json(self.relatives[name], self.groups)

    def problem_hash(self, name: str) -> str:
        return instance_hash(resolve_problem_json(self.problems[name], self.groups))


def load_workspace(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    groups = {
        name: group_from_json(obj) for name, obj in doc.get("groups", {}).items()
    }
    homs = {
        name: hom_from_json(obj, groups) for name, obj in doc.get("homs", {}).items()
    }
    tuples = {
        name: tuple_from_json(obj, groups)
        for name, obj in doc.get("tuples", {}).items()
    }
    return Workspace(
        groups=groups,
        homs=homs,
        tuples=tuples,
        problems=dict(doc.get("problems", {})),
        relatives=dict(doc.get("relatives", {})),
    )


# --- certificates -------------------------------------------------------------

def certificate_to_json(
    cert: SolutionCertificate, problem_name: str, content_hash: str
) -> dict:
    obj: dict[str, Any] = {
        "format": CERTIFICATE_FORMAT,
        "problem": problem_name,
        "instance_hash": content_hash,
        "genus": cert.genus,
        "outcome": cert.outcome,
        "is_solution": cert.is_solution,
        "is_proper": cert.is_proper,
        "basis": {
            "x": [str(w) for w in cert.basis_x_words],
            "y": [str(w) for w in cert.basis_y_words],
        },
        "phi": {"x": list(cert.phi_x), "y": list(cert.phi_y)},
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in cert.checks
        ],
        "witnesses": [
            {
                "word": str(w.word),
                "value": w.value,
                "in_n_left": w.in_n_left,
                "in_n_right": w.in_n_right,
            }
            for w in cert.witnesses
        ],
    }
    if cert.eta is not None:
        obj["eta"] = {
            "s": cert.eta.s,
            "n": cert.eta.n,
            "m": cert.eta.m,
            "kgens": list(cert.eta.kgens),
            "selected": list(cert.eta.selected),
        }
    if cert.relative is not None:
        obj["relative"] = {
            "q_order": cert.relative.q_order,
            "s_members": list(cert.relative.s_members),
            "beta_n_image": list(cert.relative.beta_n_image),
            "memberships": [list(m) for m in cert.relative.memberships],
            "offending_index": cert.relative.offending_index,
        }
    return obj


def certificate_from_json(obj: dict) -> SolutionCertificate:
    if obj.get("format") != CERTIFICATE_FORMAT:
        raise ValueError("not a surfep certificate file")
    eta = None
    if "eta" in obj:
        eta = EtaSummary(
            s=obj["eta"]["s"],
            n=obj["eta"]["n"],
            m=obj["eta"]["m"],
            kgens=tuple(obj["eta"]["kgens"]),
            selected=tuple(obj["eta"]["selected"]),
        )
    relative = None
    if "relative" in obj:
        relative = RelativeEvidence(
            q_order=obj["relative"]["q_order"],
            s_members=tuple(obj["relative"]["s_members"]),
            beta_n_image=tuple(obj["relative"]["beta_n_image"]),
            memberships=tuple(
                (m[0], m[1], m[2]) for m in obj["relative"]["memberships"]
            ),
            offending_index=obj["relative"]["offending_index"],
        )
    return SolutionCertificate(
        genus=obj["genus"],
        phi_x=tuple(obj["phi"]["x"]),
        phi_y=tuple(obj["phi"]["y"]),
        basis_x_words=tuple(parse_word(w) for w in obj["basis"]["x"]),
        basis_y_words=tuple(parse_word(w) for w in obj["basis"]["y"]),
        is_solution=obj["is_solution"],
        is_proper=obj["is_proper"],
        outcome=obj["outcome"],
        checks=tuple(
            CheckRecord(c["name"], c["passed"], c.get("detail", ""))
            for c in obj["checks"]
        ),
        eta=eta,
        witnesses=tuple(
            KernelWitness(
                parse_word(w["word"]),
                w["value"],
                w.get("in_n_left"),
                w.get("in_n_right"),
            )
            for w in obj["witnesses"]
        ),
        relative=relative,
    )


# --- workspace emission -------------------------------------------------------

def workspace_to_json(instances) -> dict:
    """Serialize generated instances into a workspace document.

    K and H are emitted inline per problem; relatives are inline too.
    """
    problems = {}
    for inst in instances:
        ep = inst.ep
        obj: dict[str, Any] = {
            "genus": ep.genus,
            "K": group_to_json(ep.kernel_subgroup.as_group()[0]),
            "H": group_to_json(ep.B),
            "action": _action_from_ep(ep),
            "beta_bar": {"x": list(ep.beta_bar.ximg), "y": list(ep.beta_bar.yimg)},
        }
        if inst.relative is not None:
            obj["relative"] = {
                "Q": group_to_json(inst.relative.Q),
                "nu": {
                    "x": list(inst.relative.nu.ximg),
                    "y": list(inst.relative.nu.yimg),
                },
                "S": list(inst.relative.S.members),
            }
            obj["relative_valid"] = inst.relative_valid
        problems[inst.name] = obj
    return {"problems": problems}


def _action_from_ep(ep: SplitEP) -> list[list[int]]:
    """Recover the action of B on Ker(alpha) from the split structure:
    conjugation by the section values, read in kernel coordinates."""
    kgrp, incl = ep.kernel_subgroup.as_group()
    pos = {a: i for i, a in enumerate(ep.kernel_subgroup.members)}
    perms = []
    for b in ep.B.elements():
        c = ep.gamma.map[b]
        perm = [
            pos[ep.A.product(c, incl.map[k], ep.A.inv[c])]
            for k in kgrp.elements()
        ]
        perms.append(perm)
    return perms
