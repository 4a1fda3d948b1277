//! Builds the learning instance of a small set-cover problem and replays
//! the identification strategy derived from a minimum cover.

use agnostic_al::analysis::mstar_realizable_exact;
use agnostic_al::generators::{gen_setcover_reduction, SetCoverInstance};

fn main() -> agnostic_al::Result<()> {
    let sc = SetCoverInstance::parse("universe a b c d\na b\nb c\nc d\na d\n")?;
    let cover = sc.min_cover()?;
    let red = gen_setcover_reduction(&sc)?;
    let inst = &red.instance;
    println!(
        "{} elements, {} subsets -> {} hypotheses over {} points",
        sc.n_elements,
        sc.subsets.len(),
        inst.n_hypotheses(),
        inst.n_points()
    );
    println!("minimum cover {:?} (size {}), bound {}", cover, cover.len(), red.bound(cover.len()));
    for h in 0..inst.n_hypotheses() {
        let (queries, decoded) = red.replay_cover_strategy(&cover, h)?;
        println!("  {:>3}: {} queries, decoded {}", inst.hypothesis_name(h), queries.len(), decoded);
    }
    match mstar_realizable_exact(&inst.class, &inst.marginal) {
        Ok(m) => println!("optimal worst case: {m}"),
        Err(e) => println!("optimal worst case not computed: {e}"),
    }
    Ok(())
}
