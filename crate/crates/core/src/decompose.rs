//! Decomposition combinatorics for (Vec_{Z/N}, χ): characters, anti-twists,
//! braided and stable isomorphism of the summands B_λ, the packet data
//! I = θ(G) with multiplicities, the groupoid homomorphism η, and the
//! conjugacy-class labels of the Rep(G) decomposition.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graded::{AntiTwist, Bicharacter};
use crate::report::Check;
use crate::scalars::Cyclotomic;

/// The characters λ_t(x) = ζ_N^{tx} of Z/N, indexed by t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterTable {
    n: u64,
}

impl CharacterTable {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        CharacterTable { n }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn values(&self, t: u64) -> Vec<Cyclotomic> {
        (0..self.n).map(|x| Cyclotomic::root_of_unity(self.n, (t * x % self.n) as i64)).collect()
    }

    pub fn product(&self, s: u64, t: u64) -> u64 {
        (s + t) % self.n
    }

    pub fn inverse(&self, t: u64) -> u64 {
        (self.n - t % self.n) % self.n
    }

    /// Distinct value tables, with pointwise products and inverses landing on
    /// the indexed characters.
    pub fn check(&self) -> Check {
        let tables: Vec<Vec<Cyclotomic>> = (0..self.n).map(|t| self.values(t)).collect();
        let witness = (|| {
            for s in 0..self.n as usize {
                for t in 0..s {
                    if tables[s] == tables[t] {
                        return Some(format!("λ_{s} = λ_{t}"));
                    }
                }
                for t in 0..self.n as usize {
                    let prod: Vec<Cyclotomic> = tables[s].iter().zip(&tables[t]).map(|(a, b)| a * b).collect();
                    if prod != tables[self.product(s as u64, t as u64) as usize] {
                        return Some(format!("λ_{s}·λ_{t} is not λ_{}", self.product(s as u64, t as u64)));
                    }
                }
                let inv: Vec<Cyclotomic> = tables[s].iter().map(|a| a.inverse().expect("root of unity")).collect();
                if inv != tables[self.inverse(s as u64) as usize] {
                    return Some(format!("λ_{s}^-1 is not λ_{}", self.inverse(s as u64)));
                }
            }
            None
        })();
        Check::from_witness("character table", format!("Z/{}", self.n), witness)
    }
}

/// ς·λ_t for t ∈ Z/N, with ς the canonical anti-twist χ(x, −x).
pub fn anti_twists(chi: Bicharacter) -> Vec<AntiTwist> {
    let canonical = AntiTwist::canonical(chi);
    (0..chi.n()).map(|t| canonical.times_character(t as i64)).collect()
}

/// ω: G → Ĝ as y ↦ t with ω(−, y) = λ_t, i.e. t = 2cy.
pub fn omega_hom(chi: Bicharacter) -> Vec<u64> {
    (0..chi.n()).map(|y| 2 * chi.c() * y % chi.n()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaKind {
    Trivial,
    Isomorphism,
    Partial,
}

fn omega_kind(chi: Bicharacter) -> OmegaKind {
    let image: std::collections::BTreeSet<u64> = omega_hom(chi).into_iter().collect();
    if image.len() == 1 {
        OmegaKind::Trivial
    } else if image.len() as u64 == chi.n() {
        OmegaKind::Isomorphism
    } else {
        OmegaKind::Partial
    }
}

/// Union-find closure of a relation on 0..n, classes ordered by least member.
fn classes(n: u64, related: impl Fn(u64, u64) -> bool) -> Vec<Vec<u64>> {
    let mut parent: Vec<u64> = (0..n).collect();
    fn find(parent: &mut [u64], mut a: u64) -> u64 {
        while parent[a as usize] != a {
            parent[a as usize] = parent[parent[a as usize] as usize];
            a = parent[a as usize];
        }
        a
    }
    for a in 0..n {
        for b in 0..n {
            if related(a, b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb) as usize] = ra.min(rb);
            }
        }
    }
    let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for a in 0..n {
        let r = find(&mut parent, a);
        out.entry(r).or_default().push(a);
    }
    out.into_values().collect()
}

/// The y ∈ G with λ_s = λ_t·ω(−, y).
pub fn braided_witnesses(chi: Bicharacter, s: u64, t: u64) -> Vec<u64> {
    let omega = omega_hom(chi);
    (0..chi.n()).filter(|&y| (t + omega[y as usize]) % chi.n() == s % chi.n()).collect()
}

/// The braided witnesses y that also satisfy λ_t(y) = ς(y).
pub fn stable_witnesses(chi: Bicharacter, s: u64, t: u64) -> Vec<u64> {
    let canonical = AntiTwist::canonical(chi);
    let table = CharacterTable::new(chi.n());
    let mu = table.values(t);
    braided_witnesses(chi, s, t).into_iter().filter(|&y| &mu[y as usize] == canonical.value(y)).collect()
}

/// Braided isomorphism classes of the B_λ: cosets of the image of ω.
pub fn classify_braided(chi: Bicharacter) -> Vec<Vec<u64>> {
    classes(chi.n(), |s, t| !braided_witnesses(chi, s, t).is_empty())
}

/// The θ-values I = θ(G) in order of first appearance, with n_i = #{x | θ(x) = i}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketReport {
    pub values: Vec<Cyclotomic>,
    pub multiplicities: Vec<usize>,
    /// For each i ∈ I, the x ∈ G with θ(x) = i.
    pub members: Vec<Vec<u64>>,
}

pub fn packets(chi: Bicharacter) -> PacketReport {
    let mut values: Vec<Cyclotomic> = Vec::new();
    let mut members: Vec<Vec<u64>> = Vec::new();
    for x in 0..chi.n() {
        let th = chi.theta(x);
        match values.iter().position(|v| *v == th) {
            Some(k) => members[k].push(x),
            None => {
                values.push(th);
                members.push(vec![x]);
            }
        }
    }
    let multiplicities = members.iter().map(|m| m.len()).collect();
    PacketReport { values, multiplicities, members }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableClassification {
    pub omega: OmegaKind,
    pub braided: Vec<Vec<u64>>,
    pub stable: Vec<Vec<u64>>,
    /// Stable classes from ς(ω^{-1}(λ)) = ς(ω^{-1}(μ)), when ω is invertible.
    pub by_inverse_omega: Option<Vec<Vec<u64>>>,
    pub packets: PacketReport,
}

/// Stable isomorphism classes of the B_λ, searching all y for both conditions.
pub fn classify_stable(chi: Bicharacter) -> StableClassification {
    let n = chi.n();
    let omega = omega_kind(chi);
    let stable = classes(n, |s, t| !stable_witnesses(chi, s, t).is_empty());
    let by_inverse_omega = (omega == OmegaKind::Isomorphism).then(|| {
        let om = omega_hom(chi);
        let inv = |t: u64| om.iter().position(|&v| v == t).expect("bijective") as u64;
        let canonical = AntiTwist::canonical(chi);
        classes(n, |s, t| canonical.value(inv(s)) == canonical.value(inv(t)))
    });
    StableClassification { omega, braided: classify_braided(chi), stable, by_inverse_omega, packets: packets(chi) }
}

/// One arrow (y, ς·λ_t) of the action groupoid, with η = ω(y, y)·(ς·λ_t)(y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub y: u64,
    pub source: u64,
    pub target: u64,
    pub eta: Cyclotomic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaSummary {
    pub arrows: Vec<Arrow>,
    pub kernel: Vec<(u64, u64)>,
}

/// The groupoid of G acting on anti-twists by φ^y(x) = ω(x, y), and η on it.
pub fn eta_groupoid(chi: Bicharacter) -> EtaSummary {
    let n = chi.n();
    let twists = anti_twists(chi);
    let omega = omega_hom(chi);
    let mut arrows = Vec::new();
    for t in 0..n {
        for y in 0..n {
            let eta = &chi.omega(y, y) * twists[t as usize].value(y);
            arrows.push(Arrow { y, source: t, target: (t + omega[y as usize]) % n, eta });
        }
    }
    let kernel = arrows.iter().filter(|a| a.eta.is_one()).map(|a| (a.y, a.source)).collect();
    EtaSummary { arrows, kernel }
}

/// (y, ς·λ_t) ↦ (−y, ς·λ_{−t}).
pub fn dagger(n: u64, y: u64, t: u64) -> (u64, u64) {
    ((n - y % n) % n, (n - t % n) % n)
}

/// Identity arrows lie in ker η, the dagger is an involution of the groupoid
/// preserving η, and η is multiplicative on composable arrows.
pub fn eta_checks(chi: Bicharacter) -> Vec<Check> {
    let n = chi.n();
    let s = eta_groupoid(chi);
    let get = |y: u64, t: u64| &s.arrows[(t * n + y) as usize];
    let ids = (0..n).find(|&t| !get(0, t).eta.is_one()).map(|t| format!("η(0, ς·λ_{t}) = {}", get(0, t).eta));
    let mut inv = None;
    'outer: for t in 0..n {
        for y in 0..n {
            let a = get(y, t);
            let (dy, dt) = dagger(n, y, t);
            let b = get(dy, dt);
            if dagger(n, dy, dt) != (y, t) || b.target != (n - a.target) % n || b.eta != a.eta {
                inv = Some(format!("arrow ({y}, λ_{t}) vs its dagger ({dy}, λ_{dt})"));
                break 'outer;
            }
        }
    }
    let mut hom = None;
    'outer2: for t in 0..n {
        for y in 0..n {
            let a = get(y, t);
            for y2 in 0..n {
                let b = get(y2, a.target);
                let c = get((y + y2) % n, t);
                if c.target != b.target || c.eta != &a.eta * &b.eta {
                    hom = Some(format!("({y}, λ_{t}) then ({y2}, λ_{})", a.target));
                    break 'outer2;
                }
            }
        }
    }
    vec![
        Check::from_witness("identity arrows in ker η", format!("N = {n}"), ids),
        Check::from_witness("dagger involution", "(y, ςλ) ↦ (−y, ςλ^{-1})", inv),
        Check::from_witness("η is a homomorphism", format!("{} arrows, {} in ker η", s.arrows.len(), s.kernel.len()), hom),
    ]
}

/// The full decomposition report for (Vec_{Z/N}, χ) as checks plus a JSON summary.
pub fn decompose_vec_g(chi: Bicharacter) -> (Vec<Check>, Value) {
    let n = chi.n();
    let cls = classify_stable(chi);
    let mut checks = vec![CharacterTable::new(n).check()];

    let twists = anti_twists(chi);
    let bad = twists.iter().enumerate().find_map(|(t, s)| s.law_violation().map(|(i, j)| format!("ς·λ_{t} at ({i}, {j})")));
    checks.push(Check::from_witness("anti-twist law", format!("{} anti-twists", twists.len()), bad));

    let sizes: Vec<usize> = cls.braided.iter().map(|c| c.len()).collect();
    let partition = sizes.iter().sum::<usize>() as u64 == n && sizes.windows(2).all(|w| w[0] == w[1]);
    checks.push(Check::from_witness(
        "braided classes are cosets",
        format!("{} classes of size {}", cls.braided.len(), sizes.first().copied().unwrap_or(0)),
        (!partition).then(|| format!("class sizes {sizes:?}")),
    ));
    let expected = match cls.omega {
        OmegaKind::Trivial => Some(n as usize),
        OmegaKind::Isomorphism => Some(1),
        OmegaKind::Partial => None,
    };
    if let Some(e) = expected {
        checks.push(Check::from_witness(
            "braided class count",
            format!("ω {:?}: expected {e}", cls.omega),
            (cls.braided.len() != e).then(|| format!("found {}", cls.braided.len())),
        ));
    }

    let refines = cls.stable.iter().all(|s| cls.braided.iter().any(|b| s.iter().all(|x| b.contains(x))));
    checks.push(Check::from_witness(
        "stable classes refine braided classes",
        format!("{} stable classes", cls.stable.len()),
        (!refines).then(|| format!("stable {:?} vs braided {:?}", cls.stable, cls.braided)),
    ));
    if let Some(alt) = &cls.by_inverse_omega {
        checks.push(Check::from_witness(
            "stable classes via ς∘ω^{-1}",
            "agrees with the witness search",
            (alt != &cls.stable).then(|| format!("{alt:?} vs {:?}", cls.stable)),
        ));
        let mut stable_sizes: Vec<usize> = cls.stable.iter().map(|c| c.len()).collect();
        let mut packet_sizes = cls.packets.multiplicities.clone();
        stable_sizes.sort_unstable();
        packet_sizes.sort_unstable();
        checks.push(Check::from_witness(
            "stable classes match θ-packets",
            format!("|I| = {}, n_i = {:?}", cls.packets.values.len(), cls.packets.multiplicities),
            (stable_sizes != packet_sizes).then(|| format!("stable sizes {stable_sizes:?} vs n_i {packet_sizes:?}")),
        ));
    }
    let total: usize = cls.packets.multiplicities.iter().sum();
    checks.push(Check::from_witness(
        "Σ n_i = N",
        format!("{total}"),
        (total as u64 != n).then(|| format!("Σ n_i = {total}, N = {n}")),
    ));
    checks.extend(eta_checks(chi));

    let eta = eta_groupoid(chi);
    let summary = json!({
        "N": n,
        "c": chi.c(),
        "omega": format!("{:?}", cls.omega).to_lowercase(),
        "omega_map": omega_hom(chi),
        "anti_twists": twists.iter().map(|s| s.values().iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "braided_classes": cls.braided,
        "stable_classes": cls.stable,
        "I": cls.packets.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "multiplicities": cls.packets.multiplicities,
        "eta_kernel": eta.kernel.iter().map(|(y, t)| json!({"y": y, "lambda": t})).collect::<Vec<_>>(),
    });
    (checks, summary)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("{0} has no inverse")]
    NoInverse(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A finite group from its Cayley table, elements 0..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<CayleyGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), n });
            }
            if let Some(col) = r.iter().position(|&v| v >= n) {
                return Err(GroupError::OutOfRange { row, col, value: r[col] });
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)).ok_or(GroupError::NoIdentity)?;
        let inverses = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity).ok_or(GroupError::NoInverse(x)))
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(CayleyGroup { table, identity, inverses })
    }

    /// Z/n.
    pub fn cyclic(n: usize) -> CayleyGroup {
        CayleyGroup::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).expect("cyclic group")
    }

    pub fn from_json(v: &Value) -> Result<CayleyGroup, String> {
        let table: Vec<Vec<usize>> = serde_json::from_value(v.clone()).map_err(|e| format!("Cayley table: {e}"))?;
        CayleyGroup::new(table).map_err(|e| e.to_string())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub elements: Vec<usize>,
    pub centralizer_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Singleton classes are the summands reached from Vec_G itself.
    pub fn is_singleton(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Conjugacy classes with their centralizer orders, labelling the summands
/// Rep(C_G(g)) of the decomposition.
pub fn rep_g_decomposition(g: &CayleyGroup) -> Vec<ConjugacyClass> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for a in 0..n {
        if seen[a] {
            continue;
        }
        let mut elements: Vec<usize> = (0..n).map(|h| g.mul(g.mul(h, a), g.inverse(h))).collect();
        elements.sort_unstable();
        elements.dedup();
        for &e in &elements {
            seen[e] = true;
        }
        let centralizer_order = (0..n).filter(|&h| g.mul(h, a) == g.mul(a, h)).count();
        out.push(ConjugacyClass { representative: a, elements, centralizer_order });
    }
    out
}

pub fn rep_g_checks(g: &CayleyGroup) -> (Vec<Check>, Value) {
    let classes = rep_g_decomposition(g);
    let n = g.order();
    let total: usize = classes.iter().map(|c| c.size()).sum();
    let orbit = classes.iter().find(|c| c.size() * c.centralizer_order != n);
    let checks = vec![
        Check::from_witness(
            "class sizes sum to |G|",
            format!("{} classes, |G| = {n}", classes.len()),
            (total != n).then(|| format!("Σ sizes = {total}")),
        ),
        Check::from_witness(
            "orbit-stabilizer",
            "size × |C_G(g)| = |G|",
            orbit.map(|c| format!("class of {}: {} × {}", c.representative, c.size(), c.centralizer_order)),
        ),
    ];
    let summary = json!({
        "order": n,
        "classes": classes.iter().map(|c| json!({
            "representative": c.representative,
            "size": c.size(),
            "centralizer_order": c.centralizer_order,
            "singleton": c.is_singleton(),
        })).collect::<Vec<_>>(),
    });
    (checks, summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn anti_twist_lists() {
        let two = anti_twists(Bicharacter::new(2, 1));
        assert_eq!(two.len(), 2);
        assert!(two[1].values().iter().all(|v| v.is_one()));
        let three = anti_twists(Bicharacter::new(3, 1));
        for mu in 0..3i64 {
            let s = AntiTwist::with_mu(Bicharacter::new(3, 1), mu);
            assert!(three.contains(&s));
        }
        assert!(three.iter().all(|s| s.law_violation().is_none()));
    }

    #[test]
    fn braided_classes() {
        assert_eq!(classify_braided(Bicharacter::new(2, 1)), vec![vec![0], vec![1]]);
        assert_eq!(classify_braided(Bicharacter::new(5, 1)).len(), 1);
        assert_eq!(classify_braided(Bicharacter::new(4, 1)), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(omega_hom(Bicharacter::new(4, 1)), vec![0, 2, 0, 2]);
    }

    #[test]
    fn stable_classes_and_packets() {
        let c3 = classify_stable(Bicharacter::new(3, 1));
        assert_eq!(c3.stable, vec![vec![0], vec![1, 2]]);
        assert_eq!(c3.packets.values, vec![xi(3, 0), xi(3, 1)]);
        assert_eq!(c3.packets.multiplicities, vec![1, 2]);
        let c5 = classify_stable(Bicharacter::new(5, 1));
        assert_eq!(c5.packets.values, vec![xi(5, 0), xi(5, 1), xi(5, 4)]);
        assert_eq!(c5.packets.multiplicities, vec![1, 2, 2]);
        for p in [3u64, 5, 7, 11] {
            let c = classify_stable(Bicharacter::new(p, 1));
            assert_eq!(c.stable.len() as u64, (p + 1) / 2);
            assert_eq!(c.by_inverse_omega.as_ref(), Some(&c.stable));
            // λ and λ^{-1} are stably isomorphic
            for t in 0..p {
                assert!(c.stable.iter().any(|cl| cl.contains(&t) && cl.contains(&((p - t) % p))));
            }
        }
    }

    #[test]
    fn eta() {
        let chi = Bicharacter::new(3, 1);
        let s = eta_groupoid(chi);
        for y in 0..3 {
            assert_eq!(s.arrows[y as usize].eta, xi(3, (y * y) as i64));
        }
        assert!(eta_checks(chi).iter().all(|c| c.passed()));
        for n in [2u64, 4, 6] {
            assert!(eta_checks(Bicharacter::new(n, 1)).iter().all(|c| c.passed()));
        }
    }

    #[test]
    fn full_reports() {
        for (n, c) in [(2u64, 1i64), (3, 1), (4, 1), (5, 2), (7, 1), (6, 1)] {
            let (checks, _) = decompose_vec_g(Bicharacter::new(n, c));
            assert!(checks.iter().all(|c| c.passed()), "N = {n}: {checks:?}");
        }
    }

    #[test]
    fn groups() {
        let z4 = rep_g_decomposition(&CayleyGroup::cyclic(4));
        assert_eq!(z4.len(), 4);
        assert!(z4.iter().all(|c| c.is_singleton() && c.centralizer_order == 4));
        let s3 = CayleyGroup::new(vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 4, 5, 3],
            vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1],
            vec![4, 3, 5, 1, 0, 2],
            vec![5, 4, 3, 2, 1, 0],
        ])
        .unwrap();
        let cl = rep_g_decomposition(&s3);
        let sizes: Vec<usize> = cl.iter().map(|c| c.size()).collect();
        let cents: Vec<usize> = cl.iter().map(|c| c.centralizer_order).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cents, vec![6, 3, 2]);
        assert!(rep_g_checks(&s3).0.iter().all(|c| c.passed()));
        assert!(matches!(CayleyGroup::new(vec![vec![0, 1], vec![0, 1]]), Err(GroupError::NoIdentity) | Err(GroupError::NoInverse(_))));
        assert!(matches!(CayleyGroup::new(vec![vec![0, 2], vec![1, 0]]), Err(GroupError::OutOfRange { .. })));
    }
}
