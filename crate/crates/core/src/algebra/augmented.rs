use serde::{Deserialize, Serialize};

use super::group::{validate_group, FiniteGroup, GroupData};
use super::rack::{rack_axioms, Rack};
use super::report::{check_list, check_table, ValidationReport, Violation};
use crate::error::{AlgebraError, StructuralError};

/// Raw augmented rack as read from input.
///
/// `action[x][g] = x·g`, `nu[x] = ν(x)`. The rack operation is derived from
/// the action; when `op` is supplied it is checked against the derived one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedData {
    pub group: GroupData,
    pub action: Vec<Vec<usize>>,
    pub nu: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<Vec<Vec<usize>>>,
}

/// A validated augmented rack `(X, G, ·, ν)` with optional good involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedRack {
    group: FiniteGroup,
    rack: Rack,
    action: Vec<Vec<usize>>,
    nu: Vec<usize>,
    rho: Option<Vec<usize>>,
}

fn check_shapes(d: &AugmentedData) -> Result<usize, StructuralError> {
    let n = d.nu.len();
    if n == 0 {
        return Err(StructuralError::Empty("augmented rack".into()));
    }
    let order = d.group.order;
    check_list("nu", &d.nu, n, order)?;
    check_table("action", &d.action, n, order, n)?;
    if let Some(rho) = &d.rho {
        check_list("rho", rho, n, n)?;
    }
    if let Some(op) = &d.op {
        check_table("rack table", op, n, n, n)?;
    }
    Ok(n)
}

/// Checks group axioms, the action, equivariance, the derived operation and,
/// when present, the good-involution identities.
pub fn validate_augmented_rack(d: &AugmentedData) -> Result<ValidationReport, StructuralError> {
    let mut report = validate_group(&d.group)?;
    let n = check_shapes(d)?;
    if !report.is_ok() {
        return Ok(report);
    }
    let g = FiniteGroup::from_valid_table(d.group.table.clone(), d.group.identity);
    report.extend(action_axioms(&g, &d.action, &d.nu));
    let derived = derived_table(&d.action, &d.nu);
    if let Some(op) = &d.op {
        'outer: for x in 0..n {
            for y in 0..n {
                if op[x][y] != derived[x][y] {
                    report.push(Violation::DerivedOperation { x, y });
                    break 'outer;
                }
            }
        }
    }
    report.extend(rack_axioms(&derived));
    if let Some(rho) = &d.rho {
        report.extend(involution_axioms(&g, &derived, &d.nu, rho));
    }
    Ok(report)
}

fn action_axioms(g: &FiniteGroup, action: &[Vec<usize>], nu: &[usize]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = nu.len();
    let e = g.identity();
    for x in 0..n {
        if action[x][e] != x {
            report.push(Violation::ActionIdentity { x });
        }
    }
    'outer: for x in 0..n {
        for a in g.elements() {
            for b in g.elements() {
                if action[action[x][a]][b] != action[x][g.mul(a, b)] {
                    report.push(Violation::ActionNotCompatible { x, g: a, h: b });
                    break 'outer;
                }
            }
        }
    }
    'outer2: for x in 0..n {
        for a in g.elements() {
            if nu[action[x][a]] != g.conj(nu[x], a) {
                report.push(Violation::NotEquivariant { x, g: a });
                break 'outer2;
            }
        }
    }
    report
}

fn involution_axioms(
    g: &FiniteGroup,
    op: &[Vec<usize>],
    nu: &[usize],
    rho: &[usize],
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = rho.len();
    for x in 0..n {
        if rho[rho[x]] != x {
            report.push(Violation::InvolutionNotInvolutive { x });
            break;
        }
    }
    for x in 0..n {
        if nu[rho[x]] != g.inv(nu[x]) {
            report.push(Violation::InvolutionNotInverseAugmentation { x });
            break;
        }
    }
    // x * rho(y) = x inverse-op y, i.e. (x * rho(y)) * y = x.
    'outer: for x in 0..n {
        for y in 0..n {
            if op[op[x][rho[y]]][y] != x {
                report.push(Violation::InvolutionNotRackInverse { x, y });
                break 'outer;
            }
        }
    }
    'outer2: for x in 0..n {
        for y in 0..n {
            if rho[op[x][y]] != op[rho[x]][y] {
                report.push(Violation::InvolutionNotCompatible { x, y });
                break 'outer2;
            }
        }
    }
    report
}

fn derived_table(action: &[Vec<usize>], nu: &[usize]) -> Vec<Vec<usize>> {
    (0..nu.len())
        .map(|x| nu.iter().map(|&g| action[x][g]).collect())
        .collect()
}

impl TryFrom<AugmentedData> for AugmentedRack {
    type Error = AlgebraError;

    fn try_from(d: AugmentedData) -> Result<Self, AlgebraError> {
        let report = validate_augmented_rack(&d)?;
        if !report.is_ok() {
            return Err(AlgebraError::Axioms(report));
        }
        let group = FiniteGroup::from_valid_table(d.group.table, d.group.identity);
        let rack = Rack::from_valid_table(derived_table(&d.action, &d.nu));
        Ok(AugmentedRack {
            group,
            rack,
            action: d.action,
            nu: d.nu,
            rho: d.rho,
        })
    }
}

impl AugmentedRack {
    /// Validates an action/augmentation pair over an already valid group.
    pub fn new(
        group: FiniteGroup,
        action: Vec<Vec<usize>>,
        nu: Vec<usize>,
        rho: Option<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        AugmentedRack::try_from(AugmentedData {
            group: group.to_data(),
            action,
            nu,
            rho,
            op: None,
        })
    }

    pub fn size(&self) -> usize {
        self.nu.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    #[inline]
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.action[x][g]
    }

    #[inline]
    pub fn nu(&self, x: usize) -> usize {
        self.nu[x]
    }

    pub fn nu_map(&self) -> &[usize] {
        &self.nu
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.rack.op(x, y)
    }

    #[inline]
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.rack.op_inv(x, y)
    }

    pub fn rho(&self) -> Option<&[usize]> {
        self.rho.as_deref()
    }

    pub fn require_rho(&self) -> Result<&[usize], AlgebraError> {
        self.rho().ok_or(AlgebraError::MissingInvolution)
    }

    /// Attaches a good involution after checking it.
    pub fn with_rho(&self, rho: Vec<usize>) -> Result<Self, AlgebraError> {
        let report = validate_good_involution(self, &rho)?;
        if !report.is_ok() {
            return Err(AlgebraError::Axioms(report));
        }
        Ok(AugmentedRack {
            rho: Some(rho),
            ..self.clone()
        })
    }

    pub fn without_rho(&self) -> Self {
        AugmentedRack {
            rho: None,
            ..self.clone()
        }
    }

    /// Elements of the subgroup generated by the image of ν, sorted.
    pub fn image_subgroup(&self) -> Vec<usize> {
        let mut gens = self.nu.clone();
        gens.sort_unstable();
        gens.dedup();
        self.group.generated_subgroup(&gens)
    }

    /// `|ν⁻¹(g)|` for every `g` in the image of ν, in group order.
    pub fn fiber_sizes(&self) -> Vec<(usize, usize)> {
        let mut counts = vec![0usize; self.group.order()];
        for &g in &self.nu {
            counts[g] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect()
    }

    pub fn to_data(&self) -> AugmentedData {
        AugmentedData {
            group: self.group.to_data(),
            action: self.action.clone(),
            nu: self.nu.clone(),
            rho: self.rho.clone(),
            op: Some(self.rack.table().to_vec()),
        }
    }
}

pub fn derived_rack_table(x: &AugmentedRack) -> Rack {
    x.rack().clone()
}

pub fn validate_good_involution(
    x: &AugmentedRack,
    rho: &[usize],
) -> Result<ValidationReport, StructuralError> {
    check_list("rho", rho, x.size(), x.size())?;
    Ok(involution_axioms(
        &x.group,
        x.rack.table(),
        &x.nu,
        rho,
    ))
}

/// Every good involution of `x`, in lexicographic order.
pub fn search_good_involutions(x: &AugmentedRack) -> Vec<Vec<usize>> {
    let n = x.size();
    let g = x.group();
    let mut out = Vec::new();
    let mut rho = vec![usize::MAX; n];
    fn rec(x: &AugmentedRack, g: &FiniteGroup, rho: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = rho.iter().position(|&r| r == usize::MAX) else {
            if validate_good_involution(x, rho).map_or(false, |r| r.is_ok()) {
                out.push(rho.clone());
            }
            return;
        };
        let want = g.inv(x.nu(i));
        for j in i..rho.len() {
            if rho[j] != usize::MAX || x.nu(j) != want {
                continue;
            }
            rho[i] = j;
            rho[j] = i;
            rec(x, g, rho, out);
            rho[i] = usize::MAX;
            rho[j] = usize::MAX;
        }
    }
    rec(x, g, &mut rho, &mut out);
    out.sort();
    out
}

/// Conjugation specification: the union of the classes of `reps` in `group`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClassData {
    pub group: GroupData,
    pub reps: Vec<usize>,
}

pub fn conjugation_subrack(data: &ConjClassData) -> Result<AugmentedRack, AlgebraError> {
    let g = FiniteGroup::try_from(data.group.clone())?;
    check_list("reps", &data.reps, data.reps.len(), g.order())?;
    conjugation_subrack_of(&g, &data.reps)
}

/// Union of conjugacy classes of `reps`, acted on by conjugation.
pub fn conjugation_subrack_of(g: &FiniteGroup, reps: &[usize]) -> Result<AugmentedRack, AlgebraError> {
    let mut elements = Vec::new();
    for (i, &r) in reps.iter().enumerate() {
        if let Some(j) = reps[..i]
            .iter()
            .position(|&s| g.conjugacy_class(s).contains(&r))
        {
            return Err(AlgebraError::OverlappingClasses(reps[j], r));
        }
        elements.extend(g.conjugacy_class(r));
    }
    elements.sort_unstable();
    conjugation_subset(g, &elements)
}

/// The conjugation augmented rack on a conjugation-closed subset.
pub fn conjugation_subset(g: &FiniteGroup, elements: &[usize]) -> Result<AugmentedRack, AlgebraError> {
    let mut elements = elements.to_vec();
    elements.sort_unstable();
    elements.dedup();
    if elements.is_empty() {
        return Err(StructuralError::Empty("conjugation subset".into()).into());
    }
    let pos = |h: usize| elements.binary_search(&h).ok();
    let mut action = Vec::with_capacity(elements.len());
    for &x in &elements {
        let mut row = Vec::with_capacity(g.order());
        for a in g.elements() {
            match pos(g.conj(x, a)) {
                Some(p) => row.push(p),
                None => return Err(AlgebraError::NotConjugationClosed { element: x, by: a }),
            }
        }
        action.push(row);
    }
    let rho: Option<Vec<usize>> = elements.iter().map(|&x| pos(g.inv(x))).collect();
    AugmentedRack::new(g.clone(), action, elements.clone(), rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> AugmentedData {
        AugmentedData {
            group: FiniteGroup::cyclic(2).to_data(),
            action: vec![vec![0, 1], vec![1, 0]],
            nu: vec![1, 1],
            rho: Some(vec![0, 1]),
            op: Some(vec![vec![1, 1], vec![0, 0]]),
        }
    }

    #[test]
    fn c2_is_valid() {
        assert!(validate_augmented_rack(&c2()).unwrap().is_ok());
    }

    #[test]
    fn c2_with_trivial_augmentation_breaks_derived_operation() {
        let mut d = c2();
        d.nu = vec![0, 0];
        let report = validate_augmented_rack(&d).unwrap();
        assert!(report
            .violations()
            .iter()
            .any(|v| matches!(v, Violation::DerivedOperation { .. })));
    }

    #[test]
    fn conjugation_classes_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let r = conjugation_subrack_of(&s3, &[1]).unwrap();
        assert_eq!(r.size(), 3);
        assert_eq!(r.rho(), Some(&[0, 1, 2][..]));
        let q = conjugation_subrack_of(&s3, &[1, 3]).unwrap();
        assert_eq!(q.size(), 5);
        assert!(matches!(
            conjugation_subrack_of(&s3, &[1, 2]),
            Err(AlgebraError::OverlappingClasses(1, 2))
        ));
    }

    #[test]
    fn abelian_singleton_class() {
        let z2 = FiniteGroup::cyclic(2);
        let r = conjugation_subrack_of(&z2, &[1]).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(search_good_involutions(&r), vec![vec![0]]);
    }

    #[test]
    fn non_inverse_involution_fails() {
        let s3 = FiniteGroup::symmetric(3);
        let q = conjugation_subrack_of(&s3, &[1, 3]).unwrap();
        // 0,1,3 are transpositions 1,2,5; 2,3 are the 3-cycles 3,4 -> positions.
        let els: Vec<usize> = q.nu_map().to_vec();
        let t0 = els.iter().position(|&g| g == 1).unwrap();
        let c0 = els.iter().position(|&g| g == 3).unwrap();
        let mut rho: Vec<usize> = (0..5).collect();
        rho.swap(t0, c0);
        let report = validate_good_involution(&q, &rho).unwrap();
        assert!(report
            .violations()
            .iter()
            .any(|v| matches!(v, Violation::InvolutionNotInverseAugmentation { .. })));
    }
}
