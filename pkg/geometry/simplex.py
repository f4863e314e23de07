"""
Exact two-phase simplex over Fractions with Bland's anti-cycling rule.

The tableau is kept in dictionary form: every row reads
``x_B[i] + sum_j A[i][j] * x_N[j] = b[i]`` and the objective reads
``z = z0 + sum_j c[j] * x_N[j]`` (maximized). All variables are non-negative.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

OPTIMAL = 'optimal'
UNBOUNDED = 'unbounded'
INFEASIBLE = 'infeasible'
TARGET_REACHED = 'target'

ZERO = Fraction(0)


@dataclass(frozen=True)
class LpResult:
    """Outcome of solve_lp; values and ray index the caller's variables"""

    status: str
    values: Optional[Tuple[Fraction, ...]] = None
    objective: Optional[Fraction] = None
    ray: Optional[Tuple[Fraction, ...]] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class SimplexTableau:
    """Dictionary-form tableau; variables are identified by integer labels"""

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction],
                 nonbasic: List[int], basic: List[int]):
        self.A = rows
        self.b = rhs
        self.nonbasic = nonbasic
        self.basic = basic
        self.c: List[Fraction] = [ZERO] * len(nonbasic)
        self.z0 = ZERO
        self.pivots = 0

    @property
    def m(self) -> int:
        return len(self.basic)

    @property
    def n(self) -> int:
        return len(self.nonbasic)

    def pivot(self, i: int, j: int) -> None:
        A, b, c = self.A, self.b, self.c
        piv = A[i][j]
        row = A[i]
        for col in range(self.n):
            row[col] = 1 / piv if col == j else row[col] / piv
        b[i] /= piv

        for k in range(self.m):
            if k == i:
                continue
            factor = A[k][j]
            if not factor:
                continue
            other = A[k]
            for col in range(self.n):
                other[col] = -factor / piv if col == j else other[col] - factor * row[col]
            b[k] -= factor * b[i]

        delta = c[j]
        if delta:
            for col in range(self.n):
                c[col] = -delta / piv if col == j else c[col] - delta * row[col]
            self.z0 += delta * b[i]

        self.nonbasic[j], self.basic[i] = self.basic[i], self.nonbasic[j]
        self.pivots += 1

    def entering_column(self) -> Optional[int]:
        """Bland: the improving column with the smallest variable label"""
        candidates = [(self.nonbasic[j], j) for j in range(self.n) if self.c[j] > 0]
        return min(candidates)[1] if candidates else None

    def leaving_row(self, j: int) -> Optional[int]:
        candidates = [
            (self.b[i] / self.A[i][j], self.basic[i], i)
            for i in range(self.m) if self.A[i][j] > 0
        ]
        return min(candidates)[2] if candidates else None

    def maximize(self, target: Optional[Fraction] = None) -> Tuple[str, Optional[int]]:
        """Run primal simplex; returns (status, entering column when unbounded)"""
        while True:
            if target is not None and self.z0 > target:
                return TARGET_REACHED, None
            j = self.entering_column()
            if j is None:
                return OPTIMAL, None
            i = self.leaving_row(j)
            if i is None:
                return UNBOUNDED, j
            self.pivot(i, j)

    def value_of(self, label: int) -> Fraction:
        for i, basic_label in enumerate(self.basic):
            if basic_label == label:
                return self.b[i]
        return ZERO

    def ray_component(self, label: int, j: int) -> Fraction:
        """Rate of change of a variable while nonbasic column j grows"""
        if self.nonbasic[j] == label:
            return Fraction(1)
        for i, basic_label in enumerate(self.basic):
            if basic_label == label:
                return -self.A[i][j]
        return ZERO

    def set_objective(self, objective: Sequence[Fraction]) -> None:
        """Express a maximization objective over original labels in nonbasic terms"""

        def weight(label: int) -> Fraction:
            return objective[label] if label < len(objective) else ZERO

        self.c = [weight(label) for label in self.nonbasic]
        self.z0 = ZERO
        for i, label in enumerate(self.basic):
            w = weight(label)
            if not w:
                continue
            self.z0 += w * self.b[i]
            for j in range(self.n):
                self.c[j] -= w * self.A[i][j]

    def drop_columns(self, labels: set) -> None:
        keep = [j for j, label in enumerate(self.nonbasic) if label not in labels]
        self.nonbasic = [self.nonbasic[j] for j in keep]
        self.A = [[row[j] for j in keep] for row in self.A]
        self.c = [self.c[j] for j in keep]

    def drop_row(self, i: int) -> None:
        del self.A[i]
        del self.b[i]
        del self.basic[i]


def solve_lp(
    objective: Sequence[Fraction],
    rows_le: Sequence[Sequence[Fraction]] = (),
    rhs_le: Sequence[Fraction] = (),
    rows_eq: Sequence[Sequence[Fraction]] = (),
    rhs_eq: Sequence[Fraction] = (),
    target: Optional[Fraction] = None,
) -> LpResult:
    """
    Maximize objective . x subject to rows_le x <= rhs_le, rows_eq x = rhs_eq, x >= 0.

    With ``target`` set, the solve stops at the first basic solution whose
    objective value strictly exceeds it (status ``target``).
    """
    n = len(objective)
    m_le, m_eq = len(rows_le), len(rows_eq)
    slack_base = n
    artificial_base = n + m_le

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    basic: List[int] = []
    artificial_rows = []

    # column labels: originals 0..n-1, slacks n..n+m_le-1, artificials after
    for k in range(m_le):
        coefficients = [Fraction(v) for v in rows_le[k]]
        slack = [ZERO] * m_le
        slack[k] = Fraction(1)
        value = Fraction(rhs_le[k])
        if value >= 0:
            rows.append(coefficients + slack)
            rhs.append(value)
            basic.append(slack_base + k)
        else:
            rows.append([-v for v in coefficients + slack])
            rhs.append(-value)
            basic.append(artificial_base + len(artificial_rows))
            artificial_rows.append(len(rows) - 1)
    for k in range(m_eq):
        coefficients = [Fraction(v) for v in rows_eq[k]] + [ZERO] * m_le
        value = Fraction(rhs_eq[k])
        if value < 0:
            coefficients = [-v for v in coefficients]
            value = -value
        rows.append(coefficients)
        rhs.append(value)
        basic.append(artificial_base + len(artificial_rows))
        artificial_rows.append(len(rows) - 1)

    # nonbasic: originals and the slacks that are not basic
    basic_set = set(basic)
    nonbasic = [label for label in range(n + m_le) if label not in basic_set]
    tableau_rows = [[row[label] for label in nonbasic] for row in rows]
    tableau = SimplexTableau(tableau_rows, rhs, nonbasic, basic)

    artificial_labels = {artificial_base + k for k in range(len(artificial_rows))}
    if artificial_labels:
        if not _phase_one(tableau, artificial_labels):
            logger.debug(f"LP infeasible after {tableau.pivots} pivots")
            return LpResult(INFEASIBLE)

    tableau.set_objective([Fraction(v) for v in objective])
    status, column = tableau.maximize(target)
    values = tuple(tableau.value_of(label) for label in range(n))
    logger.debug(f"LP {status} after {tableau.pivots} pivots")

    if status == UNBOUNDED:
        ray = tuple(tableau.ray_component(label, column) for label in range(n))
        return LpResult(UNBOUNDED, values, None, ray)
    return LpResult(status, values, tableau.z0)


def _phase_one(tableau: SimplexTableau, artificial_labels: set) -> bool:
    """Minimize the artificial sum; leaves a feasible basis without artificials"""
    tableau.set_objective([])
    # maximize -sum(artificials) written over the nonbasic columns
    for i, label in enumerate(tableau.basic):
        if label in artificial_labels:
            tableau.z0 -= tableau.b[i]
            for j in range(tableau.n):
                tableau.c[j] += tableau.A[i][j]
    tableau.maximize()
    if tableau.z0 < 0:
        return False

    i = 0
    while i < tableau.m:
        if tableau.basic[i] in artificial_labels:
            column = next(
                (j for j in range(tableau.n)
                 if tableau.nonbasic[j] not in artificial_labels and tableau.A[i][j]),
                None,
            )
            if column is None:
                # redundant equality
                tableau.drop_row(i)
                continue
            tableau.pivot(i, column)
        i += 1

    tableau.drop_columns(artificial_labels)
    return True


__all__ = ['LpResult', 'SimplexTableau', 'solve_lp', 'OPTIMAL', 'UNBOUNDED', 'INFEASIBLE', 'TARGET_REACHED']
