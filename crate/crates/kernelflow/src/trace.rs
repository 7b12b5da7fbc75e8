//! CSV dump of trajectories: one row per kept sample, tagged by trajectory
//! index. Every `every`-th sample is kept, plus the last one.

use std::io;
use std::path::Path;

use kernelflow_core::portrait::PortraitScene;

pub fn write_csv<W: io::Write>(scene: &PortraitScene, every: usize, out: W) -> csv::Result<()> {
    let every = every.max(1);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["trajectory", "t", "x", "y"])?;
    for (k, t) in scene.trajectories.iter().enumerate() {
        let last = t.samples.len().saturating_sub(1);
        for (i, s) in t.samples.iter().enumerate() {
            if i % every != 0 && i != last {
                continue;
            }
            w.write_record(&[
                k.to_string(),
                format!("{:.6}", s[0]),
                format!("{:.9}", s[1]),
                format!("{:.9}", s[2]),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write(scene: &PortraitScene, every: usize, path: &Path) -> csv::Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(scene, every, io::BufWriter::new(file))
}
