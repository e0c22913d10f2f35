//! Brute-force ground truth: exhaustive enumeration of partitions, joint
//! distributions of `(rem_s, r_s, c_s)` and the verification suites that
//! compare them with the involution and the generating functions.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::Colour;
use crate::error::{domain, invariant, Result};
use crate::involution::{conj_empty, involute, map_strict};
use crate::partition::{Cell, Partition, RemainderVector};
use crate::qseries::{bf_product, gf_closed, gf_sum_form, MultiPoly, SeriesTruncation};

/// Partitions of `n` with every part at most `max`, in reverse
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct BoundedPartitions {
    parts: Vec<usize>,
    done: bool,
}

impl BoundedPartitions {
    pub fn new(n: usize, max: usize) -> Self {
        let mut it = BoundedPartitions {
            parts: Vec::new(),
            done: n > 0 && max == 0,
        };
        it.fill(n, max);
        it
    }

    fn fill(&mut self, mut rest: usize, cap: usize) {
        while rest > 0 {
            let p = rest.min(cap);
            self.parts.push(p);
            rest -= p;
        }
    }
}

impl Iterator for BoundedPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition::from_rows(self.parts.clone());
        match self.parts.iter().rposition(|&p| p > 1) {
            None => self.done = true,
            Some(i) => {
                let rest = self.parts.len() - i;
                self.parts.truncate(i + 1);
                self.parts[i] -= 1;
                let cap = self.parts[i];
                self.fill(rest, cap);
            }
        }
        Some(out)
    }
}

/// Every partition of `n` exactly once, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> BoundedPartitions {
    BoundedPartitions::new(n, n)
}

/// Partitions of `n` whose largest part is exactly `k`, in reverse
/// lexicographic order.
pub fn partitions_with_largest(n: usize, k: usize) -> impl Iterator<Item = Partition> {
    let rest = if k == 0 || k > n {
        None
    } else {
        Some(BoundedPartitions::new(n - k, k))
    };
    rest.into_iter().flatten().map(move |p| {
        let mut parts = Vec::with_capacity(p.len() + 1);
        parts.push(k);
        parts.extend_from_slice(p.parts());
        Partition::from_rows(parts)
    })
}

/// Partitions of `n` with remainder sequence `rv` modulo `s`.
pub fn partitions_with_rem(
    n: usize,
    s: usize,
    rv: &RemainderVector,
) -> Result<impl Iterator<Item = Partition>> {
    check_s(s)?;
    rv.check_modulus(s)?;
    let rv = rv.clone();
    Ok(partitions_of(n).filter(move |p| p.remainder_sequence(s) == rv))
}

/// The number of partitions of `n`, by Euler's pentagonal recurrence.
pub fn partition_count(n: usize) -> BigInt {
    let mut p = vec![BigInt::from(1)];
    for m in 1..=n {
        let mut acc = BigInt::from(0);
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += &p[m - g1] * sign;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += &p[m - g2] * sign;
            }
        }
        p.push(acc);
    }
    p.swap_remove(n)
}

fn check_s(s: usize) -> Result<()> {
    if s == 0 {
        return domain("the modulus s must be positive");
    }
    Ok(())
}

/// Key of a joint distribution entry.
pub type JointKey = (RemainderVector, usize, usize);

/// Counts of partitions of `n` by `(rem_s, r_s, c_s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDistribution {
    pub n: usize,
    pub s: usize,
    pub entries: BTreeMap<JointKey, u64>,
}

impl JointDistribution {
    fn empty(n: usize, s: usize) -> Self {
        JointDistribution {
            n,
            s,
            entries: BTreeMap::new(),
        }
    }

    fn record(&mut self, p: &Partition) {
        let key = (
            p.remainder_sequence(self.s),
            p.r_stat(self.s),
            p.c_stat(self.s),
        );
        *self.entries.entry(key).or_default() += 1;
    }

    fn merge(mut self, other: Self) -> Self {
        for (k, v) in other.entries {
            *self.entries.entry(k).or_default() += v;
        }
        self
    }

    pub fn count(&self, rv: &RemainderVector, r: usize, c: usize) -> u64 {
        self.entries.get(&(rv.clone(), r, c)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Keys whose count differs from that of `(rv, c, r)`.
    pub fn asymmetries(&self) -> Vec<JointKey> {
        self.entries
            .iter()
            .filter(|((rv, r, c), &v)| self.count(rv, *c, *r) != v)
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Counts summed over remainder vectors.
    pub fn rc_marginal(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for ((_, r, c), v) in &self.entries {
            *out.entry((*r, *c)).or_default() += v;
        }
        out
    }

    /// `rem,r,c,count` rows with hyphen-joined remainder keys.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rem,r,c,count\n");
        for ((rv, r, c), v) in &self.entries {
            let _ = writeln!(out, "{},{r},{c},{v}", rv.hyphenated());
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct JointRow {
    rem: RemainderVector,
    r: usize,
    c: usize,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct JointJson {
    n: usize,
    s: usize,
    entries: Vec<JointRow>,
}

impl Serialize for JointDistribution {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        JointJson {
            n: self.n,
            s: self.s,
            entries: self
                .entries
                .iter()
                .map(|((rem, r, c), count)| JointRow {
                    rem: rem.clone(),
                    r: *r,
                    c: *c,
                    count: *count,
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for JointDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = JointJson::deserialize(de)?;
        let entries = j
            .entries
            .into_iter()
            .map(|e| ((e.rem, e.r, e.c), e.count))
            .collect();
        Ok(JointDistribution {
            n: j.n,
            s: j.s,
            entries,
        })
    }
}

/// Exact `(rem_s, r_s, c_s)` counts over all partitions of `n`.
pub fn joint_distribution(n: usize, s: usize) -> Result<JointDistribution> {
    check_s(s)?;
    let mut d = JointDistribution::empty(n, s);
    partitions_of(n).for_each(|p| d.record(&p));
    Ok(d)
}

/// [`joint_distribution`] split by largest part across `jobs` threads
/// (0 means the rayon default). The result does not depend on `jobs`.
pub fn joint_distribution_par(n: usize, s: usize, jobs: usize) -> Result<JointDistribution> {
    check_s(s)?;
    with_pool(jobs, || {
        let d = (0..=n)
            .into_par_iter()
            .map(|k| {
                let mut d = JointDistribution::empty(n, s);
                if n == 0 {
                    d.record(&Partition::empty());
                } else {
                    partitions_with_largest(n, k).for_each(|p| d.record(&p));
                }
                d
            })
            .reduce(|| JointDistribution::empty(n, s), JointDistribution::merge);
        Ok(d)
    })
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Colours of the remainders of `p`, top to bottom, read off from how
/// `c_s` changes as [`Partition::delta`] peels remainders from the bottom.
pub fn colours_by_delta(p: &Partition, s: usize) -> Result<Vec<Colour>> {
    let rows = p.row_positions(s);
    let mut colours = Vec::with_capacity(rows.len());
    let mut cur = p.clone();
    for &row in rows.rows().iter().rev() {
        let next = cur.delta(s)?;
        let colour = match next.c_stat(s) as i64 - cur.c_stat(s) as i64 {
            _ if row == 1 => Colour::Green,
            1 => Colour::Green,
            0 => Colour::Yellow,
            d => return invariant(format!("c_s changed by {d} removing a remainder of {cur}")),
        };
        colours.push(colour);
        cur = next;
    }
    colours.reverse();
    Ok(colours)
}

/// `c_s` counted cell by cell from the definition.
pub fn c_stat_brute(p: &Partition, s: usize) -> usize {
    p.cells()
        .filter(|&z: &Cell| p.leg(z) == Ok(0) && p.arm(z).is_ok_and(|a| (a + 1) % s == 0))
        .count()
}

/// A failed check on one partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub s: usize,
    pub input: Partition,
    pub output: Option<Partition>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub max_n: usize,
    pub s_values: Vec<usize>,
    pub checked: u64,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

fn check_one(p: &Partition, s: usize) -> Option<Violation> {
    let fail = |output: Option<&Partition>, reason: String| {
        Some(Violation {
            s,
            input: p.clone(),
            output: output.cloned(),
            reason,
        })
    };
    let out = match involute(p, s) {
        Ok(out) => out,
        Err(e) => return fail(None, e.to_string()),
    };
    let rv = p.remainder_sequence(s);
    if out.size() != p.size() {
        return fail(Some(&out), "size changed".into());
    }
    if out.remainder_sequence(s) != rv {
        return fail(Some(&out), "remainder sequence changed".into());
    }
    if (out.r_stat(s), out.c_stat(s)) != (p.c_stat(s), p.r_stat(s)) {
        return fail(Some(&out), "statistics not swapped".into());
    }
    match involute(&out, s) {
        Ok(back) if back == *p => {}
        Ok(back) => {
            return fail(
                Some(&out),
                format!("not an involution: image maps to {back}"),
            )
        }
        Err(e) => return fail(Some(&out), format!("second application failed: {e}")),
    }
    if s == 1 && out != p.conjugate() {
        return fail(Some(&out), "differs from conjugation".into());
    }
    if rv.is_empty() && conj_empty(p, s).ok().as_ref() != Some(&out) {
        return fail(Some(&out), "differs from the empty-remainder map".into());
    }
    if rv.is_strictly_increasing() && map_strict(p, s).ok().as_ref() != Some(&out) {
        return fail(
            Some(&out),
            "differs from the strictly-increasing map".into(),
        );
    }
    None
}

/// Checks the involution on every partition of every `n <= max_n` for each
/// modulus in `s_values`.
pub fn verify_involution(
    max_n: usize,
    s_values: &[usize],
    jobs: usize,
) -> Result<InvolutionReport> {
    for &s in s_values {
        check_s(s)?;
    }
    let tasks: Vec<(usize, usize)> = s_values
        .iter()
        .flat_map(|&s| (0..=max_n).map(move |n| (s, n)))
        .collect();
    let results: Vec<(u64, Vec<Violation>)> = with_pool(jobs, || {
        tasks
            .par_iter()
            .map(|&(s, n)| {
                let mut checked = 0;
                let mut bad = Vec::new();
                for p in partitions_of(n) {
                    checked += 1;
                    bad.extend(check_one(&p, s));
                }
                (checked, bad)
            })
            .collect()
    });
    let checked = results.iter().map(|r| r.0).sum();
    let violations: Vec<Violation> = results.into_iter().flat_map(|r| r.1).collect();
    Ok(InvolutionReport {
        max_n,
        s_values: s_values.to_vec(),
        checked,
        passed: violations.is_empty(),
        violations,
    })
}

/// A coefficient that disagrees with the enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfDiscrepancy {
    pub source: String,
    pub n: usize,
    pub rem: Option<RemainderVector>,
    pub r: usize,
    pub c: usize,
    pub counted: u64,
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfReport {
    pub max_n: usize,
    pub s: usize,
    pub checked: u64,
    pub discrepancies: Vec<GfDiscrepancy>,
    pub passed: bool,
}

/// Compares the closed form, the single-sum form and the product formula
/// with exhaustive counts for every `n <= max_n`.
///
/// For each remainder vector seen at `n`, every `(r, c)` whose closed form
/// can reach `q^n` is checked, so missing classes are caught as well as
/// miscounted ones.
pub fn verify_gf(max_n: usize, s: usize, jobs: usize) -> Result<GfReport> {
    check_s(s)?;
    let dists = with_pool(jobs, || {
        (0..=max_n)
            .into_par_iter()
            .map(|n| joint_distribution(n, s))
            .collect::<Result<Vec<_>>>()
    })?;
    let big_s = s as i64;
    let mut closed_cache: HashMap<(usize, usize, usize, usize, usize), MultiPoly> = HashMap::new();
    let mut sum_cache: HashMap<(usize, usize, usize), MultiPoly> = HashMap::new();
    let mut checked = 0u64;
    let mut bad = Vec::new();
    let trunc = SeriesTruncation::new(max_n);

    for d in &dists {
        let n = d.n;
        let mut rvs: Vec<&RemainderVector> = d.entries.keys().map(|k| &k.0).collect();
        rvs.dedup();
        for rv in rvs {
            let m = rv.len() as i64;
            let floor = rv.size() as i64 + big_s * (m * (m - 1) / 2 - rv.wmaj() as i64);
            // Classes with r + c >= reach start above q^n.
            let reach = if n as i64 >= floor {
                ((n as i64 - floor) / big_s) as usize + 2
            } else {
                0
            };
            for r in 0..reach {
                for c in 0..reach - r {
                    let key = (rv.len(), rv.size(), rv.wmaj(), r, c);
                    let poly = match closed_cache.get(&key) {
                        Some(p) => p,
                        None => {
                            let p = gf_closed(s, rv, r, c)?;
                            closed_cache.entry(key).or_insert(p)
                        }
                    };
                    let got = poly.coefficient(n as i64, 0, 0);
                    let want = d.count(rv, r, c);
                    checked += 1;
                    if got != BigInt::from(want) {
                        bad.push(GfDiscrepancy {
                            source: "closed".into(),
                            n,
                            rem: Some(rv.clone()),
                            r,
                            c,
                            counted: want,
                            formula: got.to_string(),
                        });
                    }
                }
            }

            let key = (rv.len(), rv.size(), rv.wmaj());
            let series = match sum_cache.get(&key) {
                Some(p) => p,
                None => {
                    let p = gf_sum_form(s, rv, trunc)?;
                    sum_cache.entry(key).or_insert(p)
                }
            };
            let mut seen = 0u64;
            for ((q, r, c), coef) in series.terms() {
                if q != n as i64 {
                    continue;
                }
                let want = d.count(rv, r as usize, c as usize);
                seen += want;
                checked += 1;
                if *coef != BigInt::from(want) {
                    bad.push(GfDiscrepancy {
                        source: "sum".into(),
                        n,
                        rem: Some(rv.clone()),
                        r: r as usize,
                        c: c as usize,
                        counted: want,
                        formula: coef.to_string(),
                    });
                }
            }
            let total: u64 = d
                .entries
                .iter()
                .filter(|(k, _)| k.0 == *rv)
                .map(|(_, v)| v)
                .sum();
            if seen != total {
                bad.push(GfDiscrepancy {
                    source: "sum".into(),
                    n,
                    rem: Some(rv.clone()),
                    r: 0,
                    c: 0,
                    counted: total,
                    formula: format!("classes summing to {seen}"),
                });
            }
        }
    }

    let product = bf_product(s, trunc, max_n)?;
    for d in &dists {
        let mut by_r: BTreeMap<usize, u64> = BTreeMap::new();
        let mut by_c: BTreeMap<usize, u64> = BTreeMap::new();
        for ((_, r, c), v) in &d.entries {
            *by_r.entry(*r).or_default() += v;
            *by_c.entry(*c).or_default() += v;
        }
        for a in 0..=d.n {
            let got = product.coefficient(d.n as i64, a as u32, 0);
            for (source, marginal) in [("product/r", &by_r), ("product/c", &by_c)] {
                let want = marginal.get(&a).copied().unwrap_or(0);
                checked += 1;
                if got != BigInt::from(want) {
                    bad.push(GfDiscrepancy {
                        source: source.into(),
                        n: d.n,
                        rem: None,
                        r: a,
                        c: a,
                        counted: want,
                        formula: got.to_string(),
                    });
                }
            }
        }
    }

    Ok(GfReport {
        max_n,
        s,
        checked,
        passed: bad.is_empty(),
        discrepancies: bad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::RemainderDiagram;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rv(x: &[usize]) -> RemainderVector {
        RemainderVector::from_entries(x.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(
            partitions_of(0).collect::<Vec<_>>(),
            vec![Partition::empty()]
        );
        let four: Vec<_> = partitions_of(4).collect();
        assert_eq!(
            four,
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(partitions_of(37).count(), 21637);
        assert_eq!(partition_count(37), BigInt::from(21637));
        for n in 0..=20 {
            assert_eq!(BigInt::from(partitions_of(n).count()), partition_count(n));
        }
        let by_largest: Vec<_> = (1..=7)
            .rev()
            .flat_map(|k| partitions_with_largest(7, k))
            .collect();
        assert_eq!(by_largest, partitions_of(7).collect::<Vec<_>>());
    }

    #[test]
    fn worked_example_classes() {
        let v = rv(&[2, 1, 1, 2, 1]);
        let class = |r, c| -> Vec<Partition> {
            partitions_with_rem(37, 3, &v)
                .unwrap()
                .filter(|q| q.r_stat(3) == r && q.c_stat(3) == c)
                .collect()
        };
        let mut a = class(2, 3);
        a.sort();
        let mut want = vec![
            p(&[15, 6, 5, 4, 4, 2, 1]),
            p(&[15, 8, 4, 4, 3, 2, 1]),
            p(&[14, 10, 4, 3, 3, 2, 1]),
            p(&[17, 6, 4, 4, 3, 2, 1]),
            p(&[14, 7, 7, 3, 3, 2, 1]),
        ];
        want.sort();
        assert_eq!(a, want);
        assert_eq!(class(3, 2).len(), 5);
        assert_eq!(partitions_with_rem(1, 2, &rv(&[])).unwrap().count(), 0);
    }

    #[test]
    fn small_joint_distributions() {
        let d = joint_distribution(4, 2).unwrap();
        let want: BTreeMap<JointKey, u64> = [
            ((rv(&[]), 1, 2), 1),
            ((rv(&[]), 2, 1), 1),
            ((rv(&[1, 1]), 0, 1), 1),
            ((rv(&[1, 1]), 1, 0), 1),
            ((rv(&[1, 1, 1, 1]), 0, 0), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d.entries, want);
        assert_eq!(
            d.to_csv(),
            "rem,r,c,count\n,1,2,1\n,2,1,1\n1-1,0,1,1\n1-1,1,0,1\n1-1-1-1,0,0,1\n"
        );
        let zero = joint_distribution(0, 4).unwrap();
        assert_eq!(zero.to_csv(), "rem,r,c,count\n,0,0,1\n");
        assert_eq!(
            joint_distribution(37, 3)
                .unwrap()
                .count(&rv(&[2, 1, 1, 2, 1]), 2, 3),
            5
        );
    }

    #[test]
    fn parallel_matches_serial() {
        for n in [0, 1, 9, 16] {
            for jobs in [1, 3] {
                assert_eq!(
                    joint_distribution_par(n, 3, jobs).unwrap(),
                    joint_distribution(n, 3).unwrap()
                );
            }
        }
    }

    #[test]
    fn json_shape() {
        let d = joint_distribution(2, 2).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"n":2,"s":2,"entries":[
                {"rem":[],"r":1,"c":1,"count":1},
                {"rem":[1,1],"r":0,"c":0,"count":1}
            ]})
        );
        assert_eq!(serde_json::from_value::<JointDistribution>(v).unwrap(), d);
    }

    #[test]
    fn delta_colours_agree_with_direct_rule() {
        for n in 0..=14 {
            for s in 1..=4 {
                for q in partitions_of(n) {
                    let direct: Vec<Colour> = RemainderDiagram::from_partition(&q, s)
                        .cells()
                        .iter()
                        .map(|c| c.colour)
                        .collect();
                    assert_eq!(colours_by_delta(&q, s).unwrap(), direct, "{q:?} s={s}");
                    assert_eq!(c_stat_brute(&q, s), q.c_stat(s));
                }
            }
        }
    }

    #[test]
    fn small_suites_pass() {
        let r = verify_involution(10, &[1, 2, 3], 2).unwrap();
        assert!(r.passed, "{:?}", r.violations);
        assert_eq!(verify_involution(0, &[1], 1).unwrap().checked, 1);
        let g = verify_gf(12, 2, 2).unwrap();
        assert!(g.passed, "{:?}", g.discrepancies);
    }
}
