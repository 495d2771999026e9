use super::{InverseSemigroup, TooLarge};

/// Partial injection of `{0..n}`; `map[x]` is the image of `x` if defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    pub map: Vec<Option<usize>>,
}

impl PartialBijection {
    pub fn empty(n: usize) -> Self {
        PartialBijection { map: vec![None; n] }
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x].is_some()).collect()
    }

    pub fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.map.iter().flatten().copied().collect();
        r.sort_unstable();
        r
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PartialBijection) -> PartialBijection {
        PartialBijection { map: other.map.iter().map(|y| y.and_then(|y| self.map[y])).collect() }
    }

    pub fn inverse(&self) -> PartialBijection {
        let mut map = vec![None; self.map.len()];
        for (x, y) in self.map.iter().enumerate() {
            if let Some(y) = y {
                map[*y] = Some(x);
            }
        }
        PartialBijection { map }
    }

    /// Points written 1-based, e.g. `{1:2,2:1}`.
    pub fn label(&self) -> String {
        let parts: Vec<String> =
            self.map.iter().enumerate().filter_map(|(x, y)| y.map(|y| format!("{}:{}", x + 1, y + 1))).collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn count_partial_injections(n: usize) -> usize {
    // sum_k C(n,k)^2 k!
    let mut total = 0usize;
    for k in 0..=n {
        let mut c = 1usize;
        for i in 0..k {
            c = c * (n - i) / (i + 1);
        }
        let fact: usize = (1..=k).product();
        total = total.saturating_add(c.saturating_mul(c).saturating_mul(fact));
    }
    total
}

/// The symmetric inverse semigroup on `n` points, elements ordered by domain
/// size and then lexicographically.
pub fn symmetric_inverse_semigroup(
    n: usize,
    max_size: usize,
) -> Result<(InverseSemigroup, Vec<PartialBijection>), TooLarge> {
    let size = count_partial_injections(n);
    if size > max_size {
        return Err(TooLarge { size, limit: max_size });
    }
    let mut all = Vec::with_capacity(size);
    let mut cur = vec![None; n];
    let mut used = vec![false; n];
    fn rec(x: usize, cur: &mut Vec<Option<usize>>, used: &mut Vec<bool>, out: &mut Vec<PartialBijection>) {
        if x == cur.len() {
            out.push(PartialBijection { map: cur.clone() });
            return;
        }
        cur[x] = None;
        rec(x + 1, cur, used, out);
        for y in 0..cur.len() {
            if !used[y] {
                used[y] = true;
                cur[x] = Some(y);
                rec(x + 1, cur, used, out);
                used[y] = false;
            }
        }
        cur[x] = None;
    }
    rec(0, &mut cur, &mut used, &mut all);
    all.sort_by_key(|p| (p.domain().len(), p.map.iter().map(|y| y.map_or(0, |v| v + 1)).collect::<Vec<_>>()));
    let index: std::collections::HashMap<PartialBijection, usize> =
        all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let names = all.iter().map(PartialBijection::label).collect();
    let s = InverseSemigroup::from_fn(names, |a, b| index[&all[a].compose(&all[b])])
        .expect("partial bijections form an inverse semigroup");
    Ok((s, all))
}
