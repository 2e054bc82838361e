"""10-fold plans and the in-domain / cross-domain training-set formulas.

Within each domain, reviews are shuffled (seeded) and dealt round-robin
into k folds, so fold sizes differ by at most one. For test cell (i, j):

* in-domain train   = the other k-1 folds of domain i
* cross-domain train = fold j of every domain except i (one fold each)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from reviewrater.corpus import ReviewSet
from reviewrater.seeding import derive_seed


class SplitError(Exception):
    """Raised for undersized domains or invalid (domain, fold) indices."""


@dataclass(frozen=True)
class FoldPlan:
    """Assignment of every review id to one (domain, fold) cell."""

    k: int
    seed: int
    folds: dict[tuple[str, int], tuple[str, ...]]
    assignment: dict[str, tuple[str, int]] = field(repr=False)

    @property
    def domains(self) -> list[str]:
        return sorted({domain for domain, _ in self.folds})

    def fold_ids(self, domain: str, fold: int) -> tuple[str, ...]:
        self._check(domain, fold)
        return self.folds[(domain, fold)]

    def _check(self, domain: str, fold: int) -> None:
        if not 1 <= fold <= self.k:
            raise SplitError(f"fold index {fold} outside 1..{self.k}")
        if (domain, fold) not in self.folds:
            raise SplitError(f"unknown domain {domain!r}")


def make_fold_plan(
    reviews: ReviewSet,
    k: int = 10,
    seed: int = 0,
    stratify: bool = False,
) -> FoldPlan:
    """Deal each domain's reviews into k folds (sizes differ by <= 1).

    Every domain needs at least k reviews. With ``stratify`` the shuffle
    happens within star groups before the round-robin deal, so each fold
    also gets a near-even share of every star level.
    """
    if k < 2:
        raise SplitError("k must be >= 2")
    folds: dict[tuple[str, int], list[str]] = {}
    assignment: dict[str, tuple[str, int]] = {}
    for domain in sorted(reviews.domains):
        members = [r for r in reviews if r.domain == domain]
        if len(members) < k:
            raise SplitError(
                f"domain {domain!r} has {len(members)} reviews; needs >= {k}"
            )
        rng = random.Random(derive_seed(seed, "fold", domain))
        if stratify:
            ordered: list[str] = []
            for star in (1, 2, 3, 4, 5):
                group = [r.id for r in members if r.stars == star]
                rng.shuffle(group)
                ordered.extend(group)
        else:
            ordered = [r.id for r in members]
            rng.shuffle(ordered)
        for domain_fold in range(1, k + 1):
            folds[(domain, domain_fold)] = []
        for idx, review_id in enumerate(ordered):
            fold = idx % k + 1
            folds[(domain, fold)].append(review_id)
            assignment[review_id] = (domain, fold)
    return FoldPlan(
        k=k,
        seed=seed,
        folds={key: tuple(ids) for key, ids in folds.items()},
        assignment=assignment,
    )


def in_domain_split(
    plan: FoldPlan, domain: str, fold: int
) -> tuple[list[str], list[str]]:
    """Test = fold (domain, fold); train = the same domain's other folds."""
    test = list(plan.fold_ids(domain, fold))
    train: list[str] = []
    for f in range(1, plan.k + 1):
        if f != fold:
            train.extend(plan.fold_ids(domain, f))
    return train, test


def cross_domain_split(
    plan: FoldPlan, domain: str, fold: int
) -> tuple[list[str], list[str]]:
    """Test = fold (domain, fold); train = fold ``fold`` of every other domain."""
    test = list(plan.fold_ids(domain, fold))
    others = [d for d in plan.domains if d != domain]
    if not others:
        raise SplitError("cross-domain split needs at least 2 domains")
    train: list[str] = []
    for other in others:
        train.extend(plan.fold_ids(other, fold))
    return train, test
