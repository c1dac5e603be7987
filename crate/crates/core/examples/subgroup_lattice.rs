//! Subgroups from generators: order, membership, structure and the orthogonal subgroup.

use nilgen::{AbelianGroup, Element};

fn main() -> nilgen::Result<()> {
    let g = AbelianGroup::from_u64s(&[4, 8, 3])?;
    println!("G = {g}");
    let gens = [
        Element::from_i64s(&g, &[2, 4, 0])?,
        Element::from_i64s(&g, &[0, 2, 1])?,
    ];
    let h = g.span(&gens)?;
    let perp = h.orthogonal();

    println!("H = <(2,4,0), (0,2,1)>");
    println!(
        "  |H| = {}, H = {}, rank {}, len {}",
        h.order(),
        h.structure(),
        h.rank(),
        h.len()
    );
    println!("  G/H = {}", h.quotient_structure());
    println!(
        "  basis {:?}",
        h.basis().iter().map(|row| show(row)).collect::<Vec<_>>()
    );
    for probe in [[0, 6, 2], [2, 0, 0], [1, 0, 0]] {
        let x = Element::from_i64s(&g, &probe)?;
        println!("  {probe:?} in H: {}", h.contains(&x)?);
    }
    println!(
        "H-perp: |H-perp| = {}, structure {}",
        perp.order(),
        perp.structure()
    );
    println!(
        "  generators {:?}",
        perp.generators()
            .iter()
            .map(|e| show(e.coords()))
            .collect::<Vec<_>>()
    );
    println!("  (H-perp)-perp == H: {}", perp.orthogonal().equals(&h)?);
    Ok(())
}

fn show<T: std::fmt::Display>(coords: &[T]) -> String {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}
