//! Deterministic enumeration of integer vectors.

/// Integer vectors of dimension `dim` with max-norm exactly `bound`, in
/// lexicographic order.
pub(crate) fn shell(dim: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let mut next = if dim == 0 || bound < 0 {
        None
    } else {
        Some(vec![-bound; dim])
    };
    std::iter::from_fn(move || loop {
        let current = next.take()?;
        let mut succ = current.clone();
        for k in (0..dim).rev() {
            if succ[k] < bound {
                succ[k] += 1;
                for c in succ.iter_mut().skip(k + 1) {
                    *c = -bound;
                }
                next = Some(succ);
                break;
            }
        }
        if current.iter().any(|c| c.abs() == bound) {
            return Some(current);
        }
    })
}

/// Shells of increasing max-norm `1..=max_bound`.
pub(crate) fn by_max_norm(dim: usize, max_bound: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=max_bound).flat_map(move |b| shell(dim, b))
}
