use super::events::{Detector, EventRecord};
use super::rng::{below, stream_rng, uniform, BACKGROUND_STREAM};
use crate::quantum::Mode;

/// Adds dark counts: a Poisson process of rate `rate_per_ns` over the span
/// of `stream`, each count on a uniformly chosen detector (D0 counts get a
/// uniform bin). Original records keep their ids and come first on ties.
pub fn inject_background(
    stream: &[EventRecord],
    rate_per_ns: f64,
    mode: Mode,
    n_bins: usize,
    seed: u64,
) -> Vec<EventRecord> {
    let (Some(first), Some(last)) = (stream.first(), stream.last()) else {
        return stream.to_vec();
    };
    if rate_per_ns.is_nan() || rate_per_ns <= 0.0 {
        return stream.to_vec();
    }
    let detectors = Detector::all(mode);
    let mut rng = stream_rng(seed, BACKGROUND_STREAM);
    let mut next_id = stream.iter().map(|e| e.event_id).max().unwrap_or(0) + 1;
    let start = first.time_ns as f64;
    let end = last.time_ns as f64;
    let mut extra = Vec::new();
    let mut t = start;
    loop {
        t += -(1.0 - uniform(&mut rng)).ln() / rate_per_ns;
        if t > end {
            break;
        }
        let detector = detectors[below(&mut rng, detectors.len())];
        let x_bin = (detector == Detector::D0).then(|| below(&mut rng, n_bins));
        extra.push(EventRecord {
            event_id: next_id,
            detector,
            time_ns: t.floor() as u64,
            x_bin,
        });
        next_id += 1;
    }

    let mut merged = Vec::with_capacity(stream.len() + extra.len());
    let (mut i, mut j) = (0, 0);
    while i < stream.len() || j < extra.len() {
        let take_original = j >= extra.len() || (i < stream.len() && stream[i].time_ns <= extra[j].time_ns);
        if take_original {
            merged.push(stream[i]);
            i += 1;
        } else {
            merged.push(extra[j]);
            j += 1;
        }
    }
    merged
}
