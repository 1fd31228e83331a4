use std::io::{self, Write};

use super::SimState;

/// Write one particle snapshot as CSV: id, kind, x, z, vx, vz, rho, p.
pub fn write_snapshot_csv<W: Write>(state: &SimState, mut out: W) -> io::Result<()> {
    writeln!(out, "id,kind,x,z,vx,vz,rho,p")?;
    for p in state.particles.iter().filter(|p| !p.excluded) {
        writeln!(
            out,
            "{},{},{:.6},{:.6},{:.6},{:.6},{:.4},{:.3}",
            p.id,
            p.kind.label(),
            p.position.x,
            p.position.y,
            p.velocity.x,
            p.velocity.y,
            p.density,
            p.pressure
        )?;
    }
    Ok(())
}
