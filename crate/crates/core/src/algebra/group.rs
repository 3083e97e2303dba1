use std::collections::{HashMap, VecDeque};

use super::Perm;
use crate::category::{FinCat, Morphism};
use crate::error::{Error, Result};

/// Default cap on the number of elements a closure may produce.
pub const CLOSURE_BUDGET: usize = 10_000;

/// A concrete permutation group with its full multiplication table.
///
/// Elements are listed in breadth-first order from the identity (shortest
/// generator word, ties broken by generator order), and named by that word:
/// `e`, `r`, `r^2`, `r*s`, ...
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<(String, Perm)>,
    elements: Vec<Perm>,
    names: Vec<String>,
    mult: Vec<usize>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.generators == other.generators
            && self.elements == other.elements
            && self.names == other.names
    }
}

impl Eq for PermGroup {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic,
    Dihedral,
    Symmetric,
}

fn word_name(word: &[usize], gens: &[(String, Perm)]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let g = &gens[word[i]].0;
        parts.push(if j - i == 1 {
            g.clone()
        } else {
            format!("{g}^{}", j - i)
        });
        i = j;
    }
    parts.join("*")
}

impl PermGroup {
    fn from_parts(
        degree: usize,
        generators: Vec<(String, Perm)>,
        elements: Vec<Perm>,
        names: Vec<String>,
    ) -> PermGroup {
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let k = elements.len();
        let mut mult = Vec::with_capacity(k * k);
        for a in &elements {
            for b in &elements {
                mult.push(index[&a.compose(b)]);
            }
        }
        PermGroup {
            degree,
            generators,
            elements,
            names,
            mult,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[(String, Perm)] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, a: usize) -> &Perm {
        &self.elements[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    /// Index of the identity; always 0.
    pub fn identity(&self) -> usize {
        0
    }

    /// `a ∘ b` as element indices.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Indices of `h`'s elements inside `self`.
    pub fn embed(&self, h: &PermGroup) -> Result<Vec<usize>> {
        if h.degree != self.degree {
            return Err(Error::NotASubgroup(format!(
                "degree {} differs from {}",
                h.degree, self.degree
            )));
        }
        h.elements
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::NotASubgroup(format!("{p} is not an element")))
            })
            .collect()
    }

    /// The subgroup on the given element indices, keeping this group's
    /// element names and order.
    pub fn subgroup(&self, members: &[usize]) -> Result<PermGroup> {
        let mut keep = vec![false; self.order()];
        for &a in members {
            keep[a] = true;
        }
        if !keep[0] {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for a in 0..self.order() {
            if !keep[a] {
                continue;
            }
            if !keep[self.inverse(a)] {
                return Err(Error::NotASubgroup(format!(
                    "inverse of `{}` missing",
                    self.names[a]
                )));
            }
            for b in 0..self.order() {
                if keep[b] && !keep[self.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!(
                        "`{}` * `{}` missing",
                        self.names[a], self.names[b]
                    )));
                }
            }
        }
        let chosen: Vec<usize> = (0..self.order()).filter(|&a| keep[a]).collect();
        // Greedy generating set: members not yet reached by earlier picks.
        let mut reached = vec![false; self.order()];
        reached[0] = true;
        let mut gens = Vec::new();
        for &a in &chosen {
            if reached[a] {
                continue;
            }
            gens.push((self.names[a].clone(), self.elements[a].clone()));
            let mut frontier: Vec<usize> = (0..self.order()).filter(|&x| reached[x]).collect();
            while let Some(x) = frontier.pop() {
                for (_, g) in &gens {
                    let y = self.mul(x, self.index[g]);
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        Ok(PermGroup::from_parts(
            self.degree,
            gens,
            chosen.iter().map(|&a| self.elements[a].clone()).collect(),
            chosen.iter().map(|&a| self.names[a].clone()).collect(),
        ))
    }

    /// Whether every element maps each block onto some block.
    pub fn preserves_partition(&self, blocks: &[Vec<usize>]) -> bool {
        let mut block_of = vec![usize::MAX; self.degree];
        for (b, pts) in blocks.iter().enumerate() {
            for &p in pts {
                block_of[p] = b;
            }
        }
        self.elements.iter().all(|g| {
            blocks.iter().all(|pts| {
                let target = block_of[g.apply(pts[0])];
                pts.iter().all(|&p| block_of[g.apply(p)] == target)
            })
        })
    }
}

/// Breadth-first closure of the generators.
pub fn close_generators(
    degree: usize,
    generators: Vec<(String, Perm)>,
    budget: usize,
) -> Result<PermGroup> {
    for (name, g) in &generators {
        if g.degree() != degree {
            return Err(Error::InvalidPerm(format!(
                "generator `{name}` has degree {}, expected {degree}",
                g.degree()
            )));
        }
    }
    let mut elements = vec![Perm::identity(degree)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut seen: HashMap<Perm, usize> = HashMap::from([(Perm::identity(degree), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (gi, (_, g)) in generators.iter().enumerate() {
            let y = elements[x].compose(g);
            if seen.contains_key(&y) {
                continue;
            }
            if elements.len() == budget {
                return Err(Error::ClosureBudgetExceeded(budget));
            }
            let mut w = words[x].clone();
            w.push(gi);
            seen.insert(y.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(y);
            words.push(w);
        }
    }
    let names = words.iter().map(|w| word_name(w, &generators)).collect();
    Ok(PermGroup::from_parts(degree, generators, elements, names))
}

fn gen(name: &str, line: Vec<usize>) -> (String, Perm) {
    (
        name.to_string(),
        Perm::from_one_line(&line).expect("standard generator"),
    )
}

/// Standard groups on `n` points. Cyclic uses `r: i ↦ i+1`; dihedral adds
/// the reflection `s` fixing 1; symmetric uses `r` and the transposition
/// `s = (1 2)`. Dihedral and symmetric groups for `n < 3` are the images of
/// their natural actions, so orders are 1 and 2 there.
pub fn standard_group(kind: GroupKind, n: usize) -> PermGroup {
    assert!(n >= 1, "standard groups need at least one point");
    let r: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    let mut gens = vec![gen("r", r)];
    match kind {
        GroupKind::Cyclic => {}
        GroupKind::Dihedral => {
            let s: Vec<usize> = (1..=n)
                .map(|i| if i == 1 { 1 } else { n + 2 - i })
                .collect();
            gens.push(gen("s", s));
        }
        GroupKind::Symmetric => {
            let mut s: Vec<usize> = (1..=n).collect();
            if n >= 2 {
                s.swap(0, 1);
            }
            gens.push(gen("s", s));
        }
    }
    close_generators(n, gens, usize::MAX).expect("standard groups close")
}

/// `G` as a one-object category `*` whose morphisms are the elements.
pub fn group_as_category(g: &PermGroup) -> FinCat {
    let k = g.order();
    let morphisms = (0..k)
        .map(|a| Morphism {
            name: g.name(a).to_string(),
            src: 0,
            tgt: 0,
        })
        .collect();
    let table = g.mult.iter().map(|&c| Some(c)).collect();
    FinCat::assemble(vec!["*".into()], morphisms, vec![0], table)
}

/// `G × H` on `deg G + deg H` points; generators get `_1` / `_2` suffixes.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let n = g.degree + h.degree;
    let mut gens = Vec::new();
    for (name, p) in &g.generators {
        let mut line: Vec<usize> = p.one_line();
        line.extend(g.degree + 1..=n);
        gens.push(gen(&format!("{name}_1"), line));
    }
    for (name, p) in &h.generators {
        let mut line: Vec<usize> = (1..=g.degree).collect();
        line.extend(p.one_line().iter().map(|v| v + g.degree));
        gens.push(gen(&format!("{name}_2"), line));
    }
    close_generators(n, gens, usize::MAX).expect("product closes")
}

/// A wreath product together with its block system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathProduct {
    pub group: PermGroup,
    pub block_size: usize,
    /// 0-based points of each block; block `b` holds `b*n .. b*n+n`.
    pub blocks: Vec<Vec<usize>>,
}

/// `G ≀ P` acting imprimitively on `n·k` points, where `G` acts on `n`
/// points and `P` on `k` blocks. Point `p` of block `b` (1-based) is
/// `(b-1)·n + p`. Block generators are named `g_b`; top generators keep
/// their names unless that clashes, in which case they get `_top`.
pub fn wreath_product(g: &PermGroup, top: &PermGroup) -> Result<WreathProduct> {
    let (n, k) = (g.degree, top.degree);
    let deg = n * k;
    let mut gens: Vec<(String, Perm)> = Vec::new();
    for b in 0..k {
        for (name, p) in &g.generators {
            let mut line: Vec<usize> = (1..=deg).collect();
            for i in 0..n {
                line[b * n + i] = b * n + p.apply(i) + 1;
            }
            gens.push(gen(&format!("{name}_{}", b + 1), line));
        }
    }
    for (name, sigma) in &top.generators {
        let line: Vec<usize> = (0..deg)
            .map(|pt| sigma.apply(pt / n) * n + pt % n + 1)
            .collect();
        let name = if gens.iter().any(|(m, _)| m == name) {
            format!("{name}_top")
        } else {
            name.clone()
        };
        gens.push(gen(&name, line));
    }
    let group = close_generators(deg, gens, CLOSURE_BUDGET)?;
    let blocks = (0..k).map(|b| (b * n..b * n + n).collect()).collect();
    Ok(WreathProduct {
        group,
        block_size: n,
        blocks,
    })
}
