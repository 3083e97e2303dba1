use crate::category::{inverse_of, FinCat};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A groupoid presented by its structure maps.
///
/// `d0` is the source map, `d1` the target map, `e` the identity section
/// and `i` the inverse. `m[g * |G1| + f]` is the composite `g ∘ f`, which
/// must be defined exactly on the fibered product `d0(g) = d1(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalGroupoidData {
    pub g0: Vec<String>,
    pub g1: Vec<String>,
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    pub e: Vec<usize>,
    pub m: Vec<Option<usize>>,
    pub i: Vec<usize>,
}

/// The one-object reduction: a set with unit, product and inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupForm {
    pub elements: Vec<String>,
    pub unit: usize,
    pub mult: Vec<usize>,
    pub inverse: Vec<usize>,
}

impl InternalGroupoidData {
    fn composable(&self, g: usize, f: usize) -> bool {
        self.d0[g] == self.d1[f]
    }

    fn mul(&self, g: usize, f: usize) -> usize {
        self.m[g * self.g1.len() + f].expect("checked total on the fibered product")
    }

    /// Size of `G⁽²⁾`, the pairs `(g, f)` with `d0(g) = d1(f)`.
    pub fn composable_pairs(&self) -> usize {
        let k = self.g1.len();
        (0..k * k)
            .filter(|p| self.composable(p / k, p % k))
            .count()
    }

    /// Over a single object the fibered product is the full square and the
    /// data is a group.
    pub fn group_form(&self) -> Option<GroupForm> {
        if self.g0.len() != 1 {
            return None;
        }
        Some(GroupForm {
            elements: self.g1.clone(),
            unit: self.e[0],
            mult: self.m.iter().map(|v| v.expect("total")).collect(),
            inverse: self.i.clone(),
        })
    }
}

/// Checks every structural diagram of an internal groupoid.
///
/// Law names: `identity-section`, `composite-endpoints`, `left-unit`,
/// `right-unit`, `associativity`, `inverse-endpoints`, `left-inverse`,
/// `right-inverse`.
pub fn check_internal_groupoid(t: &InternalGroupoidData) -> Result<ValidationReport> {
    let (n, k) = (t.g0.len(), t.g1.len());
    let in_range = |v: &[usize], len: usize, bound: usize| v.len() == len && v.iter().all(|&x| x < bound);
    if !in_range(&t.d0, k, n) || !in_range(&t.d1, k, n) {
        return Err(Error::DomainMismatch("d0/d1 must map G1 into G0".into()));
    }
    if !in_range(&t.e, n, k) || !in_range(&t.i, k, k) {
        return Err(Error::DomainMismatch("e must map G0 and i G1 into G1".into()));
    }
    if t.m.len() != k * k {
        return Err(Error::DomainMismatch("m must be indexed by G1 × G1".into()));
    }
    for g in 0..k {
        for f in 0..k {
            match (t.composable(g, f), t.m[g * k + f]) {
                (true, None) => {
                    return Err(Error::DomainMismatch(format!(
                        "m undefined on composable ({}, {})",
                        t.g1[g], t.g1[f]
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::DomainMismatch(format!(
                        "m defined off the fibered product at ({}, {})",
                        t.g1[g], t.g1[f]
                    )))
                }
                (true, Some(h)) if h >= k => {
                    return Err(Error::DomainMismatch(format!(
                        "m({}, {}) out of range",
                        t.g1[g], t.g1[f]
                    )))
                }
                _ => {}
            }
        }
    }
    let name = |f: usize| t.g1[f].as_str();
    let mut report = ValidationReport::new();
    for x in 0..n {
        if t.d0[t.e[x]] != x || t.d1[t.e[x]] != x {
            report.push("identity-section", [t.g0[x].as_str(), name(t.e[x])]);
        }
    }
    for g in 0..k {
        for f in 0..k {
            if !t.composable(g, f) {
                continue;
            }
            let h = t.mul(g, f);
            if t.d0[h] != t.d0[f] || t.d1[h] != t.d1[g] {
                report.push("composite-endpoints", [name(g), name(f)]);
            }
        }
    }
    for f in 0..k {
        let (s, tg) = (t.e[t.d0[f]], t.e[t.d1[f]]);
        if t.composable(tg, f) && t.mul(tg, f) != f {
            report.push("left-unit", [name(tg), name(f)]);
        }
        if t.composable(f, s) && t.mul(f, s) != f {
            report.push("right-unit", [name(f), name(s)]);
        }
    }
    for f in 0..k {
        for g in (0..k).filter(|&g| t.composable(g, f)) {
            let gf = t.mul(g, f);
            for h in (0..k).filter(|&h| t.composable(h, g)) {
                let hg = t.mul(h, g);
                if !t.composable(h, gf) || !t.composable(hg, f) {
                    continue;
                }
                if t.mul(h, gf) != t.mul(hg, f) {
                    report.push("associativity", [name(h), name(g), name(f)]);
                }
            }
        }
    }
    for f in 0..k {
        let g = t.i[f];
        if t.d0[g] != t.d1[f] || t.d1[g] != t.d0[f] {
            report.push("inverse-endpoints", [name(f), name(g)]);
            continue;
        }
        if t.mul(g, f) != t.e[t.d0[f]] {
            report.push("left-inverse", [name(g), name(f)]);
        }
        if t.mul(f, g) != t.e[t.d1[f]] {
            report.push("right-inverse", [name(f), name(g)]);
        }
    }
    Ok(report)
}

/// Reads a groupoid's structure maps off its composition table.
pub fn category_to_internal(c: &FinCat) -> Result<InternalGroupoidData> {
    let i = (0..c.morphism_count())
        .map(|f| inverse_of(c, f).ok_or_else(|| Error::NotAGroupoid(c.mor_name(f).to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(InternalGroupoidData {
        g0: c.objects().to_vec(),
        g1: c.morphisms().iter().map(|m| m.name.clone()).collect(),
        d0: c.morphisms().iter().map(|m| m.src).collect(),
        d1: c.morphisms().iter().map(|m| m.tgt).collect(),
        e: c.identities().to_vec(),
        m: c.table().to_vec(),
        i,
    })
}
