use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::word::FreeWord;
use super::CogError;

pub type Perm = Vec<usize>;

/// Largest finite group the permutation backend will enumerate.
pub const MAX_FINITE_ORDER: usize = 100_000;
/// Largest multiplication table accepted (associativity is checked in full).
pub const MAX_TABLE_ORDER: usize = 256;

/// Three-valued answer for questions that are not always decidable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::No, _) | (_, Decision::No) => Decision::No,
            (Decision::Yes, Decision::Yes) => Decision::Yes,
            _ => Decision::Unknown,
        }
    }

    pub fn from_bool(b: bool) -> Decision {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }
}

pub(crate) fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

/// A finite group given by permutation generators.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    gens: Vec<Perm>,
    /// Elements in breadth-first order from the identity, each with the
    /// ShortLex-first word reaching it.
    elements: Vec<(Perm, FreeWord)>,
    index: HashMap<Perm, usize>,
}

impl FiniteGroup {
    pub fn from_permutations(degree: usize, gens: Vec<Perm>) -> Result<Self, CogError> {
        for (i, p) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(CogError::InvalidGroup(format!("generator {i} is not a permutation of 0..{degree}")));
            }
        }
        let id: Perm = (0..degree).collect();
        let mut elements = vec![(id.clone(), FreeWord::identity())];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (g, p) in gens.iter().enumerate() {
                let q = compose(&elements[i].0, p);
                if index.contains_key(&q) {
                    continue;
                }
                if elements.len() >= MAX_FINITE_ORDER {
                    return Err(CogError::TooLarge(MAX_FINITE_ORDER));
                }
                let w = elements[i].1.mul(&FreeWord::gen(g));
                index.insert(q.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push((q, w));
            }
        }
        Ok(FiniteGroup { degree, gens, elements, index })
    }

    /// Validates a multiplication table `table[a][b] = a * b` and returns the
    /// group (in its left-regular representation) together with the indices
    /// of the elements chosen as generators.
    pub fn from_table(table: &[Vec<usize>]) -> Result<(Self, Vec<usize>), CogError> {
        let n = table.len();
        let bad = |m: String| Err(CogError::InvalidGroup(m));
        if n == 0 {
            return bad("empty multiplication table".into());
        }
        if n > MAX_TABLE_ORDER {
            return Err(CogError::TooLarge(MAX_TABLE_ORDER));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table must be square with entries in range".into());
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no identity element".into());
        };
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                return bad(format!("element {a} has no inverse"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let left = |g: usize| -> Perm { (0..n).map(|x| table[g][x]).collect() };
        // Greedy generating set: add each element not yet generated.
        let mut chosen = Vec::new();
        let mut group = FiniteGroup::from_permutations(n, Vec::new())?;
        for g in 0..n {
            if !group.contains(&left(g)) {
                chosen.push(g);
                group = FiniteGroup::from_permutations(n, chosen.iter().map(|&h| left(h)).collect())?;
            }
        }
        Ok((group, chosen))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter().map(|(p, _)| p)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// A word in the generators representing `p`.
    pub fn word_of(&self, p: &Perm) -> Option<&FreeWord> {
        self.index.get(p).map(|&i| &self.elements[i].1)
    }

    pub fn eval(&self, w: &FreeWord) -> Perm {
        let mut acc: Perm = (0..self.degree).collect();
        for l in w.letters() {
            let g = &self.gens[l.gen];
            let g = if l.inverse { invert(g) } else { g.clone() };
            acc = compose(&acc, &g);
        }
        acc
    }

    /// Relators read off a spanning tree of the Cayley graph: one for each
    /// non-tree edge.
    pub fn relators(&self) -> Vec<FreeWord> {
        let mut out = Vec::new();
        for (p, w) in &self.elements {
            for (g, q) in self.gens.iter().enumerate() {
                let target = &self.elements[self.index[&compose(p, q)]].1;
                let r = w.mul(&FreeWord::gen(g)).mul(&target.inverse()).cyclic_reduce();
                if !r.is_empty() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// The subgroup generated by the given elements, enumerated.
    pub fn subgroup(&self, gens: &[Perm]) -> Vec<Perm> {
        let id: Perm = (0..self.degree).collect();
        let mut seen = std::collections::BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        seen.into_iter().collect()
    }
}

pub(crate) fn invert(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

#[derive(Clone, Debug)]
pub enum Backend {
    Finite(FiniteGroup),
    /// `Z^rank`, generators the standard basis.
    FreeAbelian(usize),
    /// Generators and relators with no solution to the word problem.
    Formal(Vec<FreeWord>),
}

/// A local group: a backend together with generator names and a declared
/// list of central elements.
#[derive(Clone, Debug)]
pub struct LocalGroup {
    names: Vec<String>,
    backend: Backend,
    center: Vec<FreeWord>,
}

impl LocalGroup {
    pub fn trivial() -> Self {
        LocalGroup {
            names: Vec::new(),
            backend: Backend::Finite(FiniteGroup::from_permutations(1, Vec::new()).expect("trivial group")),
            center: Vec::new(),
        }
    }

    pub fn finite(names: Vec<String>, group: FiniteGroup) -> Result<Self, CogError> {
        if names.len() != group.generators().len() {
            return Err(CogError::InvalidGroup(format!(
                "{} names for {} generators",
                names.len(),
                group.generators().len()
            )));
        }
        check_names(&names)?;
        Ok(LocalGroup { names, backend: Backend::Finite(group), center: Vec::new() })
    }

    /// `Z^k` with the given basis names; the whole group is central.
    pub fn free_abelian(names: Vec<String>) -> Result<Self, CogError> {
        check_names(&names)?;
        let center = (0..names.len()).map(FreeWord::gen).collect();
        Ok(LocalGroup { backend: Backend::FreeAbelian(names.len()), names, center })
    }

    pub fn formal(names: Vec<String>, relators: Vec<FreeWord>) -> Result<Self, CogError> {
        check_names(&names)?;
        if relators.iter().any(|r| r.max_generator().is_some_and(|g| g >= names.len())) {
            return Err(CogError::InvalidGroup("relator uses an undeclared generator".into()));
        }
        Ok(LocalGroup { names, backend: Backend::Formal(relators), center: Vec::new() })
    }

    /// Sets the declared center. Decidable backends reject non-central
    /// elements; formal ones are accepted and flagged by [`Self::center_status`].
    pub fn with_center(mut self, center: Vec<FreeWord>) -> Result<Self, CogError> {
        if center.iter().any(|c| c.max_generator().is_some_and(|g| g >= self.names.len())) {
            return Err(CogError::InvalidGroup("center element uses an undeclared generator".into()));
        }
        self.center = center;
        if self.center_status() == Decision::No {
            return Err(CogError::NotCentral);
        }
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn center(&self) -> &[FreeWord] {
        &self.center
    }

    pub fn kind(&self) -> &'static str {
        match self.backend {
            Backend::Finite(_) => "finite",
            Backend::FreeAbelian(_) => "free_abelian",
            Backend::Formal(_) => "formal",
        }
    }

    pub fn is_decidable(&self) -> bool {
        !matches!(self.backend, Backend::Formal(_))
    }

    /// Relators of a presentation on [`Self::names`].
    pub fn relators(&self) -> Vec<FreeWord> {
        match &self.backend {
            Backend::Finite(g) => g.relators(),
            Backend::FreeAbelian(k) => {
                let mut out = Vec::new();
                for a in 0..*k {
                    for b in a + 1..*k {
                        out.push(FreeWord::gen(a).commutator(&FreeWord::gen(b)));
                    }
                }
                out
            }
            Backend::Formal(r) => r.clone(),
        }
    }

    /// `None` for infinite or unknown order.
    pub fn order(&self) -> Option<usize> {
        match &self.backend {
            Backend::Finite(g) => Some(g.order()),
            Backend::FreeAbelian(0) => Some(1),
            Backend::FreeAbelian(_) => None,
            Backend::Formal(_) if self.names.is_empty() => Some(1),
            Backend::Formal(_) => None,
        }
    }

    pub fn is_identity(&self, w: &FreeWord) -> Decision {
        let w = w.free_reduce();
        if w.is_empty() {
            return Decision::Yes;
        }
        match &self.backend {
            Backend::Finite(g) => Decision::from_bool(g.eval(&w).iter().enumerate().all(|(i, &x)| i == x)),
            Backend::FreeAbelian(k) => Decision::from_bool((0..*k).all(|g| w.exponent_sum(g) == 0)),
            Backend::Formal(rels) => {
                // Conjugates of relators and their inverses are trivial.
                let c = w.cyclic_reduce();
                let hit = rels.iter().any(|r| {
                    let r = r.cyclic_reduce();
                    r.rotations().any(|x| x == c) || r.inverse().rotations().any(|x| x == c)
                });
                if hit || c.is_empty() {
                    Decision::Yes
                } else {
                    Decision::Unknown
                }
            }
        }
    }

    pub fn equal(&self, a: &FreeWord, b: &FreeWord) -> Decision {
        self.is_identity(&a.inverse().mul(b))
    }

    /// Whether the declared center really is central.
    ///
    /// Formal backends count as verified when every commutator of a declared
    /// central generator with another generator is among the relators up to
    /// rotation and inversion.
    pub fn center_status(&self) -> Decision {
        let gens: Vec<FreeWord> = (0..self.names.len()).map(FreeWord::gen).collect();
        let mut status = Decision::Yes;
        for c in &self.center {
            for g in &gens {
                status = status.and(self.is_identity(&c.commutator(g)));
            }
        }
        status
    }

    /// Exponent vector of `w` in a free abelian group.
    pub fn abelian_coordinates(&self, w: &FreeWord) -> Option<Vec<i64>> {
        match self.backend {
            Backend::FreeAbelian(k) => Some((0..k).map(|g| w.exponent_sum(g)).collect()),
            _ => None,
        }
    }

    pub fn format(&self, w: &FreeWord) -> String {
        w.format(&self.names)
    }

    pub fn parse(&self, text: &str) -> Result<FreeWord, CogError> {
        Ok(FreeWord::parse(text, &self.names)?)
    }
}

impl fmt::Display for LocalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.backend {
            Backend::Finite(g) => write!(f, "finite group of order {}", g.order()),
            Backend::FreeAbelian(k) => write!(f, "Z^{k}"),
            Backend::Formal(r) => write!(f, "<{} | {} relators>", self.names.join(", "), r.len()),
        }
    }
}

fn check_names(names: &[String]) -> Result<(), CogError> {
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() || n == "1" || !n.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
            return Err(CogError::InvalidGroup(format!("bad generator name {n:?}")));
        }
        if names[..i].contains(n) {
            return Err(CogError::InvalidGroup(format!("duplicate generator name {n:?}")));
        }
    }
    Ok(())
}

/// Cyclic group `Z/n` with generator `name`. Panics on a bad name or an
/// order outside `1..=MAX_FINITE_ORDER`; see [`try_cyclic`].
pub fn cyclic(name: &str, n: usize) -> LocalGroup {
    try_cyclic(name, n).expect("valid cyclic group")
}

pub fn try_cyclic(name: &str, n: usize) -> Result<LocalGroup, CogError> {
    if n == 0 || n > MAX_FINITE_ORDER {
        return Err(CogError::InvalidGroup(format!("cyclic order {n} outside 1..={MAX_FINITE_ORDER}")));
    }
    let p: Perm = (0..n).map(|i| (i + 1) % n).collect();
    LocalGroup::finite(vec![name.to_string()], FiniteGroup::from_permutations(n, vec![p])?)
}

/// The symmetric group `S_3` generated by the transpositions `x = (0 1)` and
/// `y = (1 2)`.
pub fn symmetric3() -> LocalGroup {
    let g = FiniteGroup::from_permutations(3, vec![vec![1, 0, 2], vec![0, 2, 1]]).expect("S3");
    LocalGroup::finite(vec!["x".into(), "y".into()], g).expect("two names")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(g: &LocalGroup, s: &str) -> FreeWord {
        g.parse(s).unwrap()
    }

    #[test]
    fn finite_group_basics() {
        let s3 = symmetric3();
        assert_eq!(s3.order(), Some(6));
        assert_eq!(s3.is_identity(&w(&s3, "x^2")), Decision::Yes);
        assert_eq!(s3.is_identity(&w(&s3, "(x y)^3")), Decision::Yes);
        assert_eq!(s3.is_identity(&w(&s3, "x y")), Decision::No);
        assert_eq!(s3.equal(&w(&s3, "x y x"), &w(&s3, "y x y")), Decision::Yes);
    }

    #[test]
    fn cayley_presentation_defines_the_group() {
        // Every relator holds, and their count matches n*k - (n - 1) non-tree
        // edges minus those that reduce away.
        let s3 = symmetric3();
        let rels = s3.relators();
        assert!(!rels.is_empty());
        for r in &rels {
            assert_eq!(s3.is_identity(r), Decision::Yes);
        }
    }

    #[test]
    fn table_validation() {
        // Z/3 as a table.
        let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let (g, gens) = FiniteGroup::from_table(&t).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(gens, vec![1]);
        let bad = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_table(&bad).is_err());
        let no_id = vec![vec![1, 0], vec![1, 0]];
        assert!(FiniteGroup::from_table(&no_id).is_err());
        // Klein four needs two generators.
        let v4: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let (g, gens) = FiniteGroup::from_table(&v4).unwrap();
        assert_eq!((g.order(), gens.len()), (4, 2));
    }

    #[test]
    fn free_abelian_and_formal() {
        let z2 = LocalGroup::free_abelian(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(z2.is_identity(&w(&z2, "[a,b]")), Decision::Yes);
        assert_eq!(z2.is_identity(&w(&z2, "a b a^-1")), Decision::No);
        assert_eq!(z2.center_status(), Decision::Yes);

        let names = vec!["a".to_string(), "b".to_string()];
        let rel = FreeWord::parse("a b a^-1 b^-1", &names).unwrap();
        let f = LocalGroup::formal(names.clone(), vec![rel]).unwrap();
        assert_eq!(f.is_identity(&FreeWord::parse("b a b^-1 a^-1", &names).unwrap()), Decision::Yes);
        assert_eq!(f.is_identity(&FreeWord::parse("a", &names).unwrap()), Decision::Unknown);
        let f = f.with_center(vec![FreeWord::gen(0)]).unwrap();
        assert_eq!(f.center_status(), Decision::Yes);
        let g = LocalGroup::formal(names, vec![]).unwrap().with_center(vec![FreeWord::gen(0)]).unwrap();
        assert_eq!(g.center_status(), Decision::Unknown);
    }

    #[test]
    fn centrality_is_checked_for_finite_groups() {
        assert!(matches!(symmetric3().with_center(vec![FreeWord::gen(0)]), Err(CogError::NotCentral)));
        assert!(cyclic("c", 4).with_center(vec![FreeWord::gen(0)]).is_ok());
    }
}
