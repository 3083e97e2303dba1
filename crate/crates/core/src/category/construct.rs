use super::{inverse_of, FinCat, FinFunctor, Mor, Morphism, Ob};
use crate::error::{Error, Result};

/// A set viewed as a category with identities only; identities are `id_x`.
pub fn discrete_category<I, S>(set: I) -> FinCat
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let objects: Vec<String> = set.into_iter().map(Into::into).collect();
    let n = objects.len();
    let morphisms = objects
        .iter()
        .enumerate()
        .map(|(i, x)| Morphism {
            name: format!("id_{x}"),
            src: i,
            tgt: i,
        })
        .collect();
    let mut table = vec![None; n * n];
    for i in 0..n {
        table[i * n + i] = Some(i);
    }
    FinCat::assemble(objects, morphisms, (0..n).collect(), table)
}

/// The groupoid with one morphism per ordered pair, on objects `1..=n`.
pub fn codiscrete_groupoid(n: usize) -> FinCat {
    codiscrete_on((1..=n).map(|i| i.to_string()))
}

/// Codiscrete groupoid on the given object names. The morphism `a -> b` is
/// named `a>b`, except identities which are `id_a`.
pub fn codiscrete_on<I, S>(names: I) -> FinCat
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let objects: Vec<String> = names.into_iter().map(Into::into).collect();
    let n = objects.len();
    let mut morphisms = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let name = if a == b {
                format!("id_{}", objects[a])
            } else {
                format!("{}>{}", objects[a], objects[b])
            };
            morphisms.push(Morphism {
                name,
                src: a,
                tgt: b,
            });
        }
    }
    let m = n * n;
    let mut table = vec![None; m * m];
    // Morphism a -> b sits at index a*n + b.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                table[(b * n + c) * m + (a * n + b)] = Some(a * n + c);
            }
        }
    }
    let identity = (0..n).map(|a| a * n + a).collect();
    FinCat::assemble(objects, morphisms, identity, table)
}

/// Same names, endpoints swapped, composition reversed.
pub fn opposite(c: &FinCat) -> FinCat {
    let m = c.morphism_count();
    let morphisms = c
        .morphisms()
        .iter()
        .map(|f| Morphism {
            name: f.name.clone(),
            src: f.tgt,
            tgt: f.src,
        })
        .collect();
    let mut table = vec![None; m * m];
    for g in 0..m {
        for f in 0..m {
            table[g * m + f] = c.compose(f, g);
        }
    }
    FinCat::assemble(
        c.objects().to_vec(),
        morphisms,
        c.identities().to_vec(),
        table,
    )
}

/// Componentwise product; pairs are named `(a,b)`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let (n1, n2) = (c.object_count(), d.object_count());
    let (m1, m2) = (c.morphism_count(), d.morphism_count());
    let mut objects = Vec::with_capacity(n1 * n2);
    for x in c.objects() {
        for y in d.objects() {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut morphisms = Vec::with_capacity(m1 * m2);
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(Morphism {
                name: format!("({},{})", f.name, g.name),
                src: f.src * n2 + g.src,
                tgt: f.tgt * n2 + g.tgt,
            });
        }
    }
    let m = m1 * m2;
    let mut table = vec![None; m * m];
    for f1 in 0..m1 {
        for g1 in 0..m1 {
            let Some(h1) = c.compose(g1, f1) else { continue };
            for f2 in 0..m2 {
                for g2 in 0..m2 {
                    if let Some(h2) = d.compose(g2, f2) {
                        table[(g1 * m2 + g2) * m + (f1 * m2 + f2)] = Some(h1 * m2 + h2);
                    }
                }
            }
        }
    }
    let identity = (0..n1)
        .flat_map(|x| (0..n2).map(move |y| (x, y)))
        .map(|(x, y)| c.id(x) * m2 + d.id(y))
        .collect();
    FinCat::assemble(objects, morphisms, identity, table)
}

/// Disjoint union; names are prefixed with `inl.` and `inr.`.
pub fn coproduct(c: &FinCat, d: &FinCat) -> FinCat {
    coproduct_tagged(&[("inl", c), ("inr", d)]).expect("inl./inr. prefixes never collide")
}

/// Disjoint union of several categories, each name prefixed with `tag.`.
/// Fails with `DuplicateName` when tags containing dots make prefixed names
/// collide.
pub fn coproduct_tagged(parts: &[(&str, &FinCat)]) -> Result<FinCat> {
    let m: usize = parts.iter().map(|(_, c)| c.morphism_count()).sum();
    let (mut objects, mut morphisms, mut identity) = (Vec::new(), Vec::new(), Vec::new());
    let mut table = vec![None; m * m];
    for (tag, c) in parts {
        let (n0, m0) = (objects.len(), morphisms.len());
        objects.extend(c.objects().iter().map(|x| format!("{tag}.{x}")));
        morphisms.extend(c.morphisms().iter().map(|f| Morphism {
            name: format!("{tag}.{}", f.name),
            src: f.src + n0,
            tgt: f.tgt + n0,
        }));
        identity.extend(c.identities().iter().map(|&i| i + m0));
        for (g, f, h) in c.compose_entries() {
            table[(g + m0) * m + (f + m0)] = Some(h + m0);
        }
    }
    FinCat::try_assemble(objects, morphisms, identity, table)
}

/// The subcategory on `objects` and `morphisms`, with names kept and indices
/// renumbered in the given order. Composites that fall outside `morphisms`
/// are left undefined.
///
/// # Panics
///
/// Panics if a kept morphism has an endpoint outside `objects` or a kept
/// object's identity is missing.
pub fn subcategory(c: &FinCat, objects: &[Ob], morphisms: &[Mor]) -> FinCat {
    let mut ob_pos = vec![None; c.object_count()];
    for (i, &x) in objects.iter().enumerate() {
        ob_pos[x] = Some(i);
    }
    let mut mor_pos = vec![None; c.morphism_count()];
    for (i, &f) in morphisms.iter().enumerate() {
        mor_pos[f] = Some(i);
    }
    let kept = |x: Ob| ob_pos[x].expect("endpoint among the kept objects");
    let mors = morphisms
        .iter()
        .map(|&f| Morphism {
            name: c.mor_name(f).to_string(),
            src: kept(c.src(f)),
            tgt: kept(c.tgt(f)),
        })
        .collect();
    let m = morphisms.len();
    let mut table = vec![None; m * m];
    for (i, &f) in morphisms.iter().enumerate() {
        for (j, &g) in morphisms.iter().enumerate() {
            if let Some(h) = c.compose(g, f) {
                table[j * m + i] = mor_pos[h];
            }
        }
    }
    let identity = objects
        .iter()
        .map(|&x| mor_pos[c.id(x)].expect("identity among the kept morphisms"))
        .collect();
    let names = objects.iter().map(|&x| c.ob_name(x).to_string()).collect();
    FinCat::assemble(names, mors, identity, table)
}

/// The graph of `f`: objects `(X,FX)`, morphisms `(a,Fa)`.
pub fn functor_graph_category(f: &FinFunctor) -> FinCat {
    let (c, d) = (&*f.dom, &*f.cod);
    let objects = (0..c.object_count())
        .map(|x| format!("({},{})", c.ob_name(x), d.ob_name(f.obj[x])))
        .collect();
    let morphisms = c
        .morphisms()
        .iter()
        .enumerate()
        .map(|(a, m)| Morphism {
            name: format!("({},{})", m.name, d.mor_name(f.mor[a])),
            src: m.src,
            tgt: m.tgt,
        })
        .collect();
    FinCat::assemble(
        objects,
        morphisms,
        c.identities().to_vec(),
        c.table().to_vec(),
    )
}

/// The one-object category of loops at `x`, keeping the original names.
pub fn vertex_group(c: &FinCat, x: Ob) -> Result<FinCat> {
    if let Some(f) = (0..c.morphism_count()).find(|&f| inverse_of(c, f).is_none()) {
        return Err(Error::NotAGroupoid(c.mor_name(f).to_string()));
    }
    let loops: Vec<Mor> = c.hom(x, x).to_vec();
    let local = |f: Mor| loops.iter().position(|&l| l == f).expect("loop");
    let k = loops.len();
    let morphisms = loops
        .iter()
        .map(|&f| Morphism {
            name: c.mor_name(f).to_string(),
            src: 0,
            tgt: 0,
        })
        .collect();
    let mut table = vec![None; k * k];
    for (i, &g) in loops.iter().enumerate() {
        for (j, &f) in loops.iter().enumerate() {
            table[i * k + j] = Some(local(c.comp(g, f)));
        }
    }
    Ok(FinCat::assemble(
        vec![c.ob_name(x).to_string()],
        morphisms,
        vec![local(c.id(x))],
        table,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::tests::c3;
    use crate::category::{check_category, connected_components, is_groupoid};

    #[test]
    fn discrete_counts() {
        let c = discrete_category(["1", "2", "3"]);
        assert_eq!((c.object_count(), c.morphism_count()), (3, 3));
        assert!(check_category(&c).ok);
        let e = discrete_category(Vec::<String>::new());
        assert_eq!((e.object_count(), e.morphism_count()), (0, 0));
        let t = discrete_category(["x"]);
        assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
    }

    #[test]
    fn codiscrete_counts() {
        for n in 0..5 {
            let c = codiscrete_groupoid(n);
            assert_eq!((c.object_count(), c.morphism_count()), (n, n * n));
            assert!(check_category(&c).ok);
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(c.hom(a, b).len(), 1);
                }
            }
        }
        let c2 = codiscrete_groupoid(2);
        let names: Vec<_> = c2.morphisms().iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["id_1", "1>2", "2>1", "id_2"]);
    }

    #[test]
    fn opposite_is_an_involution() {
        let c = c3();
        assert_eq!(opposite(&opposite(&c)), c);
        let g = codiscrete_groupoid(3);
        assert!(check_category(&opposite(&g)).ok);
        assert_eq!(opposite(&opposite(&g)), g);
    }

    #[test]
    fn product_and_coproduct_counts() {
        let c = c3();
        let p = product(&c, &c);
        assert_eq!((p.object_count(), p.morphism_count()), (1, 9));
        assert!(check_category(&p).ok);
        let g = codiscrete_groupoid(3);
        let s = coproduct(&g, &g);
        assert_eq!((s.object_count(), s.morphism_count()), (6, 18));
        assert!(check_category(&s).ok);
        assert_eq!(connected_components(&s).len(), 2);
        assert!(is_groupoid(&s));
    }

    #[test]
    fn graph_of_identity_matches_domain_shape() {
        let c = std::sync::Arc::new(c3());
        let g = functor_graph_category(&FinFunctor::identity(c.clone()));
        assert!(check_category(&g).ok);
        assert_eq!(g.mor_name(1), "(r,r)");
        assert_eq!(g.morphism_count(), c.morphism_count());
    }

    #[test]
    fn vertex_groups() {
        let g = codiscrete_groupoid(3);
        assert_eq!(vertex_group(&g, 1).unwrap().morphism_count(), 1);
        let c = c3();
        assert_eq!(vertex_group(&c, 0).unwrap(), c);
        let mut b = FinCat::builder();
        b.objects(["A", "B"])
            .morphism("f", "A", "B")
            .auto_identities()
            .infer_unit_entries();
        let arrow = b.build().unwrap();
        assert!(matches!(
            vertex_group(&arrow, 0),
            Err(Error::NotAGroupoid(_))
        ));
    }
}
