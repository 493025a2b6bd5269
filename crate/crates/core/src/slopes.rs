//! Slopes on the hexagonal cusp tori: lengths, the dihedral group `D6` of
//! isometries of each torus, slope-set equivalence and orbit enumeration.
//!
//! Everything here is exact integer arithmetic.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::deformation::{gcd, CuspFilling, FillingSpec};
use crate::error::{Error, Result};

/// Largest number of cusps accepted by the exhaustive searches.
pub const MAX_SEARCH_K: usize = 8;

/// An unoriented primitive class `±(p, q)`, stored with `p > 0` or `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(Self::canonical(p, q))
    }

    fn canonical(p: i64, q: i64) -> Self {
        if p < 0 || (p == 0 && q < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `L² = p² + q² − pq`, the squared length on the unit hexagonal torus.
    pub fn length_sq(&self) -> i64 {
        self.p * self.p + self.q * self.q - self.p * self.q
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<CuspFilling>()? {
            CuspFilling::Filled { p, q } => Slope::new(p, q),
            CuspFilling::Unfilled => Err(Error::Parse("a slope cannot be \"inf\"".into())),
        }
    }
}

pub fn slope_length(s: Slope) -> f64 {
    (s.length_sq() as f64).sqrt()
}

/// `r^rot ∘ s^refl`: `s` is applied first. `r` acts on coefficients by
/// `(p, q) ↦ (p − q, p)`, `s` by `(p, q) ↦ (p − q, −q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct D6Element {
    rot: u8,
    refl: bool,
}

impl D6Element {
    pub const IDENTITY: D6Element = D6Element { rot: 0, refl: false };
    pub const R: D6Element = D6Element { rot: 1, refl: false };
    pub const S: D6Element = D6Element { rot: 0, refl: true };

    pub fn new(rot: i64, refl: bool) -> Self {
        D6Element { rot: rot.rem_euclid(6) as u8, refl }
    }

    pub fn rot(&self) -> u8 {
        self.rot
    }

    pub fn refl(&self) -> bool {
        self.refl
    }

    /// All twelve elements.
    pub fn all() -> impl Iterator<Item = D6Element> {
        (0..6).flat_map(|r| [false, true].map(move |e| D6Element::new(r, e)))
    }

    /// The six rotations.
    pub fn rotations() -> impl Iterator<Item = D6Element> {
        (0..6).map(|r| D6Element::new(r, false))
    }

    /// Group product `self · other` (apply `other` first).
    pub fn compose(self, other: D6Element) -> D6Element {
        // s r^b = r^{-b} s.
        let b = if self.refl { -(other.rot as i64) } else { other.rot as i64 };
        D6Element::new(self.rot as i64 + b, self.refl ^ other.refl)
    }

    pub fn inverse(self) -> D6Element {
        if self.refl {
            self
        } else {
            D6Element::new(-(self.rot as i64), false)
        }
    }

    /// Action on an oriented coefficient pair.
    pub fn act_pair(self, (mut p, mut q): (i64, i64)) -> (i64, i64) {
        if self.refl {
            (p, q) = (p - q, -q);
        }
        for _ in 0..self.rot {
            (p, q) = (p - q, p);
        }
        (p, q)
    }

    /// The same action on real coefficients.
    pub fn act_real(self, (mut p, mut q): (f64, f64)) -> (f64, f64) {
        if self.refl {
            (p, q) = (p - q, -q);
        }
        for _ in 0..self.rot {
            (p, q) = (p - q, p);
        }
        (p, q)
    }
}

impl fmt::Display for D6Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rot, self.refl) {
            (0, false) => f.write_str("id"),
            (r, false) => write!(f, "r^{r}"),
            (0, true) => f.write_str("s"),
            (r, true) => write!(f, "r^{r}s"),
        }
    }
}

pub fn d6_act(e: D6Element, s: Slope) -> Slope {
    let (p, q) = e.act_pair((s.p, s.q));
    Slope::canonical(p, q)
}

/// One D6 orbit of slopes of a given length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeOrbit {
    pub length_sq: i64,
    pub slopes: Vec<Slope>,
    /// Size of the orbit under the rotation subgroup alone.
    pub rotation_orbit_size: usize,
}

fn orbit_of(s: Slope, group: impl Iterator<Item = D6Element>) -> Vec<Slope> {
    let mut out: Vec<Slope> = group.map(|g| d6_act(g, s)).collect();
    out.sort();
    out.dedup();
    out
}

/// All slopes with `L² ≤ max_len_sq`, grouped into D6 orbits, ordered by length.
pub fn classify_slopes(max_len_sq: i64) -> Vec<SlopeOrbit> {
    // p² + q² − pq ≥ (p² + q²)/2, so |p|, |q| ≤ √(2N).
    let bound = ((2 * max_len_sq.max(0)) as f64).sqrt().ceil() as i64 + 1;
    let mut seen = HashSet::new();
    let mut orbits = Vec::new();
    for p in 0..=bound {
        for q in -bound..=bound {
            let Ok(s) = Slope::new(p, q) else { continue };
            if s.length_sq() > max_len_sq || seen.contains(&s) {
                continue;
            }
            let slopes = orbit_of(s, D6Element::all());
            seen.extend(slopes.iter().copied());
            let rotation_orbit_size = orbit_of(s, D6Element::rotations()).len();
            orbits.push(SlopeOrbit { length_sq: s.length_sq(), slopes, rotation_orbit_size });
        }
    }
    orbits.sort_by(|a, b| (a.length_sq, &a.slopes).cmp(&(b.length_sq, &b.slopes)));
    orbits
}

/// True iff every filled slope has `L ≥ √7`.
pub fn hyperbolic_filling_check(spec: &FillingSpec) -> bool {
    spec.cusps().iter().all(|c| match *c {
        CuspFilling::Unfilled => true,
        CuspFilling::Filled { p, q } => p * p + q * q - p * q >= 7,
    })
}

/// A slope (or none) on each of `k` marked tori.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlopeSet(Vec<Option<Slope>>);

impl SlopeSet {
    pub fn new(slopes: Vec<Option<Slope>>) -> Self {
        SlopeSet(slopes)
    }

    /// `slopes` are `(slope, torus)` with 1-based torus indices.
    pub fn from_assignments(k: usize, slopes: &[(Slope, usize)]) -> Result<Self> {
        let mut v = vec![None; k];
        for &(s, i) in slopes {
            if !(1..=k).contains(&i) {
                return Err(Error::CuspIndex { index: i, k });
            }
            if v[i - 1].replace(s).is_some() {
                return Err(Error::Parse(format!("torus {i} carries two slopes")));
            }
        }
        Ok(SlopeSet(v))
    }

    /// Parses `"3/1@1,5/1@2"` on `k` tori; the empty string is the empty set.
    pub fn parse(k: usize, text: &str) -> Result<Self> {
        let mut assignments = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (slope, torus) =
                item.split_once('@').ok_or_else(|| Error::Parse(format!("expected \"p/q@i\", got {item:?}")))?;
            let torus: usize = torus.trim().parse().map_err(|_| Error::Parse(format!("bad torus index {torus:?}")))?;
            assignments.push((slope.parse()?, torus));
        }
        Self::from_assignments(k, &assignments)
    }

    pub fn from_filling(spec: &FillingSpec) -> Result<Self> {
        spec.cusps()
            .iter()
            .map(|c| match *c {
                CuspFilling::Unfilled => Ok(None),
                CuspFilling::Filled { p, q } => Slope::new(p, q).map(Some),
            })
            .collect::<Result<Vec<_>>>()
            .map(SlopeSet)
    }

    pub fn to_filling(&self) -> FillingSpec {
        FillingSpec::new(
            self.0
                .iter()
                .map(|s| match s {
                    None => CuspFilling::Unfilled,
                    Some(s) => CuspFilling::Filled { p: s.p, q: s.q },
                })
                .collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn slopes(&self) -> &[Option<Slope>] {
        &self.0
    }

    /// Number `h` of tori carrying a slope.
    pub fn filled(&self) -> usize {
        self.0.iter().flatten().count()
    }
}

impl fmt::Display for SlopeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().enumerate().filter_map(|(i, s)| s.map(|s| format!("{s}@{}", i + 1))).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// An element of `S_k ⋉ D6^k`: `local[i]` acts on torus `i + 1`, which is
/// then carried to torus `perm[i] + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlopeSetIsometry {
    pub perm: Vec<usize>,
    pub local: Vec<D6Element>,
}

impl SlopeSetIsometry {
    pub fn identity(k: usize) -> Self {
        SlopeSetIsometry { perm: (0..k).collect(), local: vec![D6Element::IDENTITY; k] }
    }

    pub fn k(&self) -> usize {
        self.perm.len()
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.local.iter().all(|e| !e.refl)
    }

    pub fn apply(&self, set: &SlopeSet) -> SlopeSet {
        let mut out = vec![None; set.k()];
        for (i, s) in set.0.iter().enumerate() {
            out[self.perm[i]] = s.map(|s| d6_act(self.local[i], s));
        }
        SlopeSet(out)
    }

    pub fn inverse(&self) -> SlopeSetIsometry {
        let k = self.k();
        let mut perm = vec![0; k];
        let mut local = vec![D6Element::IDENTITY; k];
        for i in 0..k {
            perm[self.perm[i]] = i;
            local[self.perm[i]] = self.local[i].inverse();
        }
        SlopeSetIsometry { perm, local }
    }
}

fn check_k(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::SignatureMismatch(format!("slope sets on {a} and {b} tori")));
    }
    if a > MAX_SEARCH_K {
        return Err(Error::Domain(format!("k = {a} exceeds the search limit {MAX_SEARCH_K}")));
    }
    Ok(())
}

/// Searches `S_k ⋉ C6^k` (or `S_k ⋉ D6^k` when `orientation_preserving` is
/// false) for an isometry carrying `a` onto `b`.
///
/// The search is exact: torus `i` may only go to torus `j` if some local
/// element carries slope to slope, and those local witnesses are found first,
/// so the backtracking only explores the compatible permutations.
pub fn slope_sets_equivalent(
    a: &SlopeSet,
    b: &SlopeSet,
    orientation_preserving: bool,
) -> Result<Option<SlopeSetIsometry>> {
    check_k(a.k(), b.k())?;
    let k = a.k();
    let group: Vec<D6Element> =
        if orientation_preserving { D6Element::rotations().collect() } else { D6Element::all().collect() };
    let local_witness = |i: usize, j: usize| -> Option<D6Element> {
        match (a.0[i], b.0[j]) {
            (None, None) => Some(D6Element::IDENTITY),
            (Some(s), Some(t)) => group.iter().copied().find(|&g| d6_act(g, s) == t),
            _ => None,
        }
    };
    let table: Vec<Vec<Option<D6Element>>> = (0..k).map(|i| (0..k).map(|j| local_witness(i, j)).collect()).collect();

    fn search(
        i: usize,
        table: &[Vec<Option<D6Element>>],
        used: &mut [bool],
        perm: &mut Vec<usize>,
        local: &mut Vec<D6Element>,
    ) -> bool {
        if i == table.len() {
            return true;
        }
        for j in 0..table.len() {
            if let (false, Some(g)) = (used[j], table[i][j]) {
                used[j] = true;
                perm.push(j);
                local.push(g);
                if search(i + 1, table, used, perm, local) {
                    return true;
                }
                used[j] = false;
                perm.pop();
                local.pop();
            }
        }
        false
    }

    let (mut perm, mut local) = (Vec::with_capacity(k), Vec::with_capacity(k));
    let found = search(0, &table, &mut vec![false; k], &mut perm, &mut local);
    Ok(found.then_some(SlopeSetIsometry { perm, local }))
}

/// The orbit of `a` under orientation-preserving isometries `S_k ⋉ C6^k`,
/// sorted. Breadth-first search over the generators (adjacent transpositions
/// and a rotation on each torus).
pub fn enumerate_equivalent_sets(a: &SlopeSet) -> Result<Vec<SlopeSet>> {
    check_k(a.k(), a.k())?;
    let k = a.k();
    let mut gens = Vec::new();
    for i in 0..k {
        let mut g = SlopeSetIsometry::identity(k);
        g.local[i] = D6Element::R;
        gens.push(g);
        if i + 1 < k {
            let mut t = SlopeSetIsometry::identity(k);
            t.perm.swap(i, i + 1);
            gens.push(t);
        }
    }
    let mut seen = HashSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(set) = queue.pop_front() {
        for g in &gens {
            let next = g.apply(&set);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<SlopeSet> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The lower bound `k!·3^h / (h!·(k−h)!)` on the orbit size.
pub fn similarity_count_bound(k: usize, h: usize) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    fact(k) * 3u64.pow(h as u32) / (fact(h) * fact(k - h))
}
