use rayon::prelude::*;

/// Items per work unit. Partial results are merged in chunk order, so
/// floating-point sums do not depend on the thread count.
pub(crate) const CHUNK: usize = 32;

pub(crate) fn chunked_accumulate<I, A, S>(
    items: &[I],
    scratch: impl Fn() -> S + Sync,
    zero: impl Fn() -> A + Sync,
    step: impl Fn(&mut S, &mut A, &I) + Sync,
    mut merge: impl FnMut(&mut A, A),
) -> A
where
    I: Sync,
    A: Send,
{
    let partials: Vec<A> = items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut s = scratch();
            let mut acc = zero();
            for item in chunk {
                step(&mut s, &mut acc, item);
            }
            acc
        })
        .collect();
    let mut total = zero();
    for p in partials {
        merge(&mut total, p);
    }
    total
}
