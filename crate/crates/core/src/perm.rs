//! Permutations of coordinate positions and permutation groups held as a
//! base and strong generating set.
//!
//! Action convention: a permutation acts on vectors by
//! `apply(v)[i] = v[images[i]]`, and [`Permutation::compose`] is
//! left-to-right: `v.apply(p).apply(q) == v.apply(p.compose(q))`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf2::BitVector;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Zero-based images; fails unless they form a bijection on `0..n`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::param(format!(
                    "images {images:?} do not form a permutation of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::param("1-based images must be positive"));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]` on the images array.
    pub fn cycle(n: usize, c: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for (k, &a) in c.iter().enumerate() {
            if a >= n {
                return Err(Error::param(format!("point {a} out of range for degree {n}")));
            }
            images[a] = c[(k + 1) % c.len()];
        }
        Self::from_images(images)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::cycle(n, &[a, b])
    }

    /// Cyclic shift `i -> i + s mod n` on the images array.
    pub fn shift(n: usize, s: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + s) % n).collect(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Apply `self` then `other` (in the vector action).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: usize) -> Permutation {
        let mut r = Self::identity(self.degree());
        for _ in 0..e {
            r = r.compose(self);
        }
        r
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1usize;
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// `result[i] = v[images[i]]`.
    pub fn apply(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.degree() {
            return Err(Error::dim(format!(
                "vector of length {} under permutation of degree {}",
                v.len(),
                self.degree()
            )));
        }
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(v.len());
        for (i, &src) in self.images.iter().enumerate() {
            if v.get(src) {
                out.set(i, true);
            }
        }
        out
    }

    /// Point-map product used inside the stabilizer chain: first `self`,
    /// then `other`, as maps `i -> images[i]`.
    fn then(&self, other: &Permutation) -> Permutation {
        other.compose(self)
    }

    /// Parses a single line of whitespace-separated 1-based images.
    pub fn parse(s: &str) -> Result<Self> {
        let line = s
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| Error::parse(1, "empty permutation file"))?;
        let images: std::result::Result<Vec<usize>, _> =
            line.split_whitespace().map(str::parse::<usize>).collect();
        let images = images.map_err(|e| Error::parse(1, e.to_string()))?;
        Self::from_one_based(&images).map_err(|e| Error::parse(1, e.to_string()))
    }

    /// One line of 1-based images, newline-terminated.
    pub fn serialize(&self) -> String {
        let parts: Vec<String> = self.one_based().iter().map(usize::to_string).collect();
        format!("{}\n", parts.join(" "))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    /// Cycle notation on 0-based points of the images map.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for s in 0..self.degree() {
            if seen[s] || self.images[s] == s {
                continue;
            }
            any = true;
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x.to_string());
                x = self.images[x];
            }
            write!(f, "({})", cyc.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    /// `transversal[b]` maps the level's base point to `b`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(n: usize, point: usize) -> Self {
        let mut l = Level {
            point,
            gens: Vec::new(),
            transversal: vec![None; n],
            orbit: Vec::new(),
        };
        l.recompute_orbit(n);
        l
    }

    fn recompute_orbit(&mut self, n: usize) {
        self.transversal = vec![None; n];
        self.transversal[self.point] = Some(Permutation::identity(n));
        self.orbit = vec![self.point];
        let mut k = 0;
        while k < self.orbit.len() {
            let b = self.orbit[k];
            let ub = self.transversal[b].clone().expect("orbit point");
            for g in &self.gens {
                let c = g.image(b);
                if self.transversal[c].is_none() {
                    self.transversal[c] = Some(ub.then(g));
                    self.orbit.push(c);
                }
            }
            k += 1;
        }
    }
}

/// A permutation group with a base and strong generating set built by the
/// deterministic Schreier–Sims algorithm. Immutable after construction.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        PermGroup {
            degree: n,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::dim(format!(
                "generator of degree {} in group of degree {degree}",
                g.degree()
            )));
        }
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            levels: Vec::new(),
        };
        group.schreier_sims(&generators);
        Ok(group)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::transposition(n, 0, 1).expect("n >= 2"));
            gens.push(Permutation::cycle(n, &(0..n).collect::<Vec<_>>()).expect("valid"));
        }
        Self::new(n, gens).expect("same degree")
    }

    fn schreier_sims(&mut self, gens: &[Permutation]) {
        let n = self.degree;
        for g in gens {
            let moved = (0..n).find(|&i| g.image(i) != i).expect("non-identity");
            if !self.levels.iter().any(|l| g.image(l.point) != l.point) {
                self.levels.push(Level::new(n, moved));
            }
        }
        for i in 0..self.levels.len() {
            let fixing: Vec<Permutation> = gens
                .iter()
                .filter(|g| self.levels[..i].iter().all(|l| g.image(l.point) == l.point))
                .cloned()
                .collect();
            self.levels[i].gens = fixing;
            self.levels[i].recompute_orbit(n);
        }

        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let orbit = self.levels[lvl].orbit.clone();
            let level_gens = self.levels[lvl].gens.clone();
            for &b in &orbit {
                let ub = self.levels[lvl].transversal[b].clone().expect("orbit");
                for x in &level_gens {
                    let c = x.image(b);
                    let uc = self.levels[lvl].transversal[c].as_ref().expect("closed orbit");
                    let h = ub.then(x).then(&uc.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip(&h, lvl + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        if j == self.levels.len() {
                            let moved = (0..n).find(|&p| y.image(p) != p).expect("non-identity");
                            self.levels.push(Level::new(n, moved));
                        }
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(y.clone());
                            self.levels[l].recompute_orbit(n);
                        }
                        i = j + 1;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed all levels).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.image(level.point);
            match &level.transversal[b] {
                None => return (g, j),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut all: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !all.contains(g) {
                    all.push(g.clone());
                }
            }
        }
        all
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, j) = self.strip(g, 0);
        j == self.levels.len() && r.is_identity()
    }

    /// Orbit of a point under the group generators.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.generators {
                let c = g.image(orbit[k]);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
            k += 1;
        }
        orbit
    }

    /// All elements, for groups of order at most `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::Capacity(format!(
                "group of order {order} exceeds enumeration cap {cap}"
            )));
        }
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for &b in &level.orbit {
                let u = level.transversal[b].as_ref().expect("orbit");
                for e in &elems {
                    next.push(e.then(u));
                }
            }
            elems = next;
        }
        Ok(elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn random_perm(rng: &mut impl Rng, n: usize) -> Permutation {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            v.swap(i, rng.gen_range(0..=i));
        }
        Permutation::from_images(v).unwrap()
    }

    fn closure(gens: &[Permutation], n: usize) -> HashSet<Permutation> {
        let mut set: HashSet<Permutation> = HashSet::new();
        set.insert(Permutation::identity(n));
        let mut frontier = vec![Permutation::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn apply_examples() {
        let v = BitVector::parse01("11000").unwrap();
        assert_eq!(Permutation::identity(5).apply(&v).unwrap(), v);
        let t = Permutation::transposition(5, 0, 1).unwrap();
        assert_eq!(t.apply(&v).unwrap(), v);
        let e0 = BitVector::parse01("10000").unwrap();
        assert_eq!(t.apply(&e0).unwrap(), BitVector::parse01("01000").unwrap());
        assert!(t.apply(&BitVector::zeros(4)).is_err());
    }

    #[test]
    fn composition_law_exhaustive_degree_5() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let all = PermGroup::symmetric(5).elements(200).unwrap();
        assert_eq!(all.len(), 120);
        for _ in 0..200 {
            let p = &all[rng.gen_range(0..120)];
            let q = &all[rng.gen_range(0..120)];
            for mask in 0u64..32 {
                let v = BitVector::from_u64(5, mask);
                let lhs = q.apply(&p.apply(&v).unwrap()).unwrap();
                assert_eq!(lhs, p.compose(q).apply(&v).unwrap());
            }
        }
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(PermGroup::trivial(4).order(), BigUint::from(1u32));
        let c7 = PermGroup::new(7, vec![Permutation::shift(7, 1)]).unwrap();
        assert_eq!(c7.order(), BigUint::from(7u32));
        assert_eq!(PermGroup::symmetric(6).order(), BigUint::from(720u32));
        assert_eq!(PermGroup::symmetric(1).order(), BigUint::from(1u32));
    }

    #[test]
    fn parse_and_serialize() {
        let p = Permutation::parse("# comment\n2 3 1 4\n").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 3]);
        assert_eq!(p.serialize(), "2 3 1 4\n");
        assert!(Permutation::parse("1 1 2").is_err());
        assert!(Permutation::parse("0 1").is_err());
    }

    #[test]
    fn membership_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 15 {
            let n = rng.gen_range(3..=7);
            let gens: Vec<Permutation> = (0..rng.gen_range(1..=2))
                .map(|_| random_perm(&mut rng, n))
                .collect();
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let explicit = closure(&gens, n);
            if explicit.len() > 10_000 {
                continue;
            }
            checked += 1;
            assert_eq!(g.order(), BigUint::from(explicit.len()));
            let elems: HashSet<Permutation> = g.elements(10_000).unwrap().into_iter().collect();
            assert_eq!(elems, explicit);
            for p in PermGroup::symmetric(n).elements(10_000).unwrap() {
                assert_eq!(g.contains(&p), explicit.contains(&p));
            }
        }
    }

    #[test]
    fn strong_generators_fix_earlier_base_points() {
        let g = PermGroup::symmetric(6);
        let base = g.base();
        for (i, l) in g.levels.iter().enumerate() {
            for s in &l.gens {
                for &b in &base[..i] {
                    assert_eq!(s.image(b), b);
                }
            }
        }
    }
}
