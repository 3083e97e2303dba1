use petgraph::unionfind::UnionFind;

use super::{FinCat, Mor, Ob};

/// The two-sided inverse of `f`, if any.
pub fn inverse_of(c: &FinCat, f: Mor) -> Option<Mor> {
    let (s, t) = (c.src(f), c.tgt(f));
    c.hom(t, s)
        .iter()
        .copied()
        .find(|&g| c.compose(g, f) == Some(c.id(s)) && c.compose(f, g) == Some(c.id(t)))
}

pub fn is_groupoid(c: &FinCat) -> bool {
    (0..c.morphism_count()).all(|f| inverse_of(c, f).is_some())
}

/// Classes of objects joined by a morphism in either direction, each sorted,
/// listed by smallest member.
pub fn connected_components(c: &FinCat) -> Vec<Vec<Ob>> {
    let n = c.object_count();
    let mut uf = UnionFind::<usize>::new(n);
    for f in c.morphisms() {
        uf.union(f.src, f.tgt);
    }
    let mut classes: Vec<Vec<Ob>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = uf.find(x);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(x);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{codiscrete_groupoid, discrete_category, opposite};

    #[test]
    fn census() {
        let g = codiscrete_groupoid(3);
        assert!(is_groupoid(&g));
        assert_eq!(connected_components(&g), vec![vec![0, 1, 2]]);
        let d = discrete_category(["1", "2", "3"]);
        assert!(is_groupoid(&d));
        assert_eq!(connected_components(&d).len(), 3);
        let mut b = FinCat::builder();
        b.objects(["A", "B"])
            .morphism("f", "A", "B")
            .auto_identities()
            .infer_unit_entries();
        let arrow = b.build().unwrap();
        assert!(!is_groupoid(&arrow));
        assert_eq!(connected_components(&arrow).len(), 1);
        assert_eq!(
            connected_components(&opposite(&arrow)),
            connected_components(&arrow)
        );
    }
}
