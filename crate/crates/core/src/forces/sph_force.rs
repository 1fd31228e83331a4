use crate::flume::StructureBox;
use crate::sph::SimState;

/// Net horizontal pressure force on the structure [N].
///
/// Each outermost wall particle represents a face segment of height dp; the
/// slice force per unit width is scaled by the structure's transverse width.
/// Zero when no active fluid particle lies within `reach` of the box.
pub fn sph_structure_force(state: &SimState, structure: &StructureBox, dp: f64, reach: f64) -> f64 {
    let wet = state.fluid().filter(|p| !p.excluded).any(|p| {
        let x = p.position.x;
        let z = p.position.y;
        x > structure.x_min - reach
            && x < structure.x_max + reach
            && z > structure.z_min - reach
            && z < structure.z_max + reach
    });
    if !wet {
        return 0.0;
    }
    let face_sum = |ids: &[usize]| ids.iter().map(|&i| state.particles[i].pressure.max(0.0)).sum::<f64>();
    structure.width_y * dp * (face_sum(&structure.upstream_face) - face_sum(&structure.downstream_face))
}

/// Mean fluid-particle speed in a vertical strip of half-width 2·dp centred
/// 2·dp upstream of the structure face, over the structure's height range;
/// 0 when the strip holds no fluid.
pub fn effective_velocity(state: &SimState, structure: &StructureBox, dp: f64) -> f64 {
    let xc = structure.x_min - 2.0 * dp;
    let (sum, n) = state
        .fluid()
        .filter(|p| {
            !p.excluded
                && (p.position.x - xc).abs() <= 2.0 * dp
                && p.position.y > structure.z_min
                && p.position.y <= structure.z_max
        })
        .fold((0.0, 0usize), |(s, n), p| (s + p.velocity.norm(), n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}
