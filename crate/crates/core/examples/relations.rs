//! Short relators of the groups generated by the unitriangular factors.

use recmat::groups::{enumerate_relations, triangular_checks, Group, SearchCaps};

fn main() -> recmat::Result<()> {
    let caps = SearchCaps::default();
    for (group, len) in [(Group::GammaL, 4), (Group::GammaZ, 4)] {
        println!("{group}, length <= {len}:");
        for r in enumerate_relations(group, len, caps)? {
            println!("  {r}");
        }
    }
    let report = triangular_checks(4)?;
    println!("triangular group checks passed: {}", report.passed());
    Ok(())
}
