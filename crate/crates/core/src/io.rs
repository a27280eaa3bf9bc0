//! File formats: binary state checkpoints, CSV exports, binary field grids.
//!
//! All floating-point text uses 17 significant digits so that written
//! values round-trip bit-exactly and reruns diff clean.

use crate::error::{Error, Result};
use crate::pade::{Field, PoleInfo};
use crate::solver::SolveTrajectory;
use crate::state::{FourierState, Representation};
use crate::tracker::SingularityEstimate;
use crate::C64;
use std::io::{Read, Write};
use std::path::Path;

const CHECKPOINT_MAGIC: &[u8; 8] = b"NLHSTAT1";
const CHECKPOINT_VERSION: u32 = 1;

/// 17-significant-digit float formatting (round-trip exact for f64).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Checkpoint layout: magic, version, representation byte, truncation
/// order, time, then `2N+1` little-endian (re, im) pairs in ascending k.
pub fn write_checkpoint(path: &Path, state: &FourierState) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(CHECKPOINT_MAGIC)?;
    f.write_all(&CHECKPOINT_VERSION.to_le_bytes())?;
    f.write_all(&[match state.repr {
        Representation::U => 0u8,
        Representation::V => 1u8,
    }])?;
    f.write_all(&(state.n as u64).to_le_bytes())?;
    f.write_all(&state.t.to_le_bytes())?;
    for c in &state.coeffs {
        f.write_all(&c.re.to_le_bytes())?;
        f.write_all(&c.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_checkpoint(path: &Path) -> Result<FourierState> {
    let mut f = std::fs::File::open(path)?;
    let mut magic = [0u8; 8];
    f.read_exact(&mut magic)?;
    if &magic != CHECKPOINT_MAGIC {
        return Err(Error::Checkpoint("bad magic".into()));
    }
    let mut b4 = [0u8; 4];
    f.read_exact(&mut b4)?;
    if u32::from_le_bytes(b4) != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint("unsupported version".into()));
    }
    let mut b1 = [0u8; 1];
    f.read_exact(&mut b1)?;
    let repr = match b1[0] {
        0 => Representation::U,
        1 => Representation::V,
        other => return Err(Error::Checkpoint(format!("bad representation byte {other}"))),
    };
    let mut b8 = [0u8; 8];
    f.read_exact(&mut b8)?;
    let n = u64::from_le_bytes(b8) as usize;
    f.read_exact(&mut b8)?;
    let t = f64::from_le_bytes(b8);
    let mut coeffs = Vec::with_capacity(2 * n + 1);
    for _ in 0..(2 * n + 1) {
        f.read_exact(&mut b8)?;
        let re = f64::from_le_bytes(b8);
        f.read_exact(&mut b8)?;
        let im = f64::from_le_bytes(b8);
        coeffs.push(C64::new(re, im));
    }
    Ok(FourierState::new(t, repr, coeffs))
}

/// `(t, k, Re c_k, Im c_k)` rows for a set of states.
pub fn write_coeffs_csv(path: &Path, states: &[&FourierState]) -> Result<()> {
    let mut out = String::from("t,k,re_c,im_c\n");
    for s in states {
        for k in -(s.n as isize)..=(s.n as isize) {
            let c = s.coeff(k);
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(s.t),
                k,
                fmt_f64(c.re),
                fmt_f64(c.im)
            ));
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Tracker series export.
pub fn write_track_csv(path: &Path, estimates: &[SingularityEstimate]) -> Result<()> {
    let mut out = String::from("t,y_star,mu,log_c,rms_residual,k_min,k_max,flags\n");
    for e in estimates {
        let mut flags = Vec::new();
        if e.flagged {
            flags.push("under_resolved");
        }
        if e.mu_fixed {
            flags.push("mu_fixed");
        }
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_f64(e.t),
            fmt_f64(e.y_star),
            fmt_f64(e.mu),
            fmt_f64(e.log_c),
            fmt_f64(e.rms_residual),
            e.window.k_min,
            e.window.k_max,
            flags.join("+")
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_track_csv(path: &Path) -> Result<Vec<(f64, f64, f64)>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() < 3 {
            return Err(Error::Config(format!("track csv row {i} malformed")));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| Error::Config(format!("track csv row {i}: {e}")))
        };
        rows.push((parse(cols[0])?, parse(cols[1])?, parse(cols[2])?));
    }
    Ok(rows)
}

/// Pole / branch-point list.
pub fn write_poles_csv(path: &Path, poles: &[PoleInfo], branches: &[C64]) -> Result<()> {
    let mut out = String::from("re_z,im_z,re_residue,im_residue,kind\n");
    for p in poles {
        out.push_str(&format!(
            "{},{},{},{},pole\n",
            fmt_f64(p.z.re),
            fmt_f64(p.z.im),
            fmt_f64(p.residue.re),
            fmt_f64(p.residue.im)
        ));
    }
    for b in branches {
        out.push_str(&format!("{},{},0,0,branch\n", fmt_f64(b.re), fmt_f64(b.im)));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Strip field as CSV `(Re z, Im z, |u|, arg u)`.
pub fn write_field_csv(path: &Path, field: &Field) -> Result<()> {
    let mut out = String::from("re_z,im_z,abs_u,arg_u\n");
    for j in 0..field.grid.ny {
        for i in 0..field.grid.nx {
            let z = field.grid.point(i, j);
            let idx = j * field.grid.nx + i;
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(z.re),
                fmt_f64(z.im),
                fmt_f64(field.modulus[idx]),
                fmt_f64(field.phase[idx])
            ));
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Binary field grid: header (nx, ny as u64; x0, x1, y0, y1 as f64) then
/// row-major little-endian f64 modulus values followed by phase values.
pub fn write_field_bin(path: &Path, field: &Field) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(&(field.grid.nx as u64).to_le_bytes())?;
    f.write_all(&(field.grid.ny as u64).to_le_bytes())?;
    for v in [field.grid.x0, field.grid.x1, field.grid.y0, field.grid.y1] {
        f.write_all(&v.to_le_bytes())?;
    }
    for v in field.modulus.iter().chain(field.phase.iter()) {
        f.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Monitor series of a trajectory.
pub fn write_monitor_csv(path: &Path, traj: &SolveTrajectory) -> Result<()> {
    let mut out = String::from("t,representation,min_re,max_re,mean_re,tail_ratio\n");
    for m in &traj.monitor {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_f64(m.t),
            match m.repr {
                Representation::U => "U",
                Representation::V => "V",
            },
            fmt_f64(m.min_re),
            fmt_f64(m.max_re),
            fmt_f64(m.mean_re),
            fmt_f64(m.tail_ratio)
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}
