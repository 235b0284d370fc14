//! Ground-truth datasets: procedural generators, array-backed ingestion,
//! channel statistics and observation preprocessing.

use crate::error::{Error, Result};
use crate::factor::{FactorPos, FactorSpace};
use crate::npy::{NpyArray, NpyData};
use crate::rng::Rng;

/// A C x H x W image tensor. Raw observations lie in [0, 1]; standardised
/// observations carry no range constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub channels: usize,
    pub height: usize,
    pub width: usize,
    /// Row-major, channel-first: `data[c*H*W + y*W + x]`.
    pub data: Vec<f64>,
}

impl Observation {
    pub fn zeros(channels: usize, height: usize, width: usize) -> Self {
        Self {
            channels,
            height,
            width,
            data: vec![0.0; channels * height * width],
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.channels, self.height, self.width)
    }

    fn shape_str(&self) -> String {
        format!("{}x{}x{}", self.channels, self.height, self.width)
    }

    pub fn check_same_shape(&self, other: &Observation) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                a: self.shape_str(),
                b: other.shape_str(),
            });
        }
        Ok(())
    }

    pub fn channel(&self, c: usize) -> &[f64] {
        let n = self.height * self.width;
        &self.data[c * n..(c + 1) * n]
    }

    pub fn channel_mut(&mut self, c: usize) -> &mut [f64] {
        let n = self.height * self.width;
        &mut self.data[c * n..(c + 1) * n]
    }
}

/// Parameters of the procedural squares dataset: `num_squares` axis-aligned
/// coloured squares on a black canvas, each placed independently on a
/// `grid_points` x `grid_points` grid with `spacing` pixels between grid
/// points. Factors are ordered (x_1, y_1, ..., x_n, y_n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XySquaresParams {
    pub image_size: usize,
    pub square_size: usize,
    pub grid_points: usize,
    pub spacing: usize,
    pub num_squares: usize,
}

impl Default for XySquaresParams {
    fn default() -> Self {
        Self {
            image_size: 64,
            square_size: 8,
            grid_points: 8,
            spacing: 8,
            num_squares: 3,
        }
    }
}

impl XySquaresParams {
    pub fn validate(&self) -> Result<()> {
        if self.image_size == 0 || self.square_size == 0 || self.grid_points == 0 || self.spacing == 0 {
            return Err(Error::InvalidParams("xysquares: all sizes must be positive".into()));
        }
        if !(1..=3).contains(&self.num_squares) {
            return Err(Error::InvalidParams("xysquares: num_squares must be 1..=3".into()));
        }
        let reach = (self.grid_points - 1) * self.spacing + self.square_size;
        if reach > self.image_size {
            return Err(Error::InvalidParams(format!(
                "xysquares: grid reach {reach} exceeds image size {}",
                self.image_size
            )));
        }
        Ok(())
    }

    pub fn factor_space(&self) -> FactorSpace {
        FactorSpace::new(&vec![self.grid_points; 2 * self.num_squares]).expect("validated params")
    }

    pub fn factor_names(&self) -> Vec<String> {
        const COLOUR: [&str; 3] = ["R", "G", "B"];
        (0..self.num_squares)
            .flat_map(|k| [format!("x_{}", COLOUR[k]), format!("y_{}", COLOUR[k])])
            .collect()
    }
}

/// Renders one squares observation. Square `k` paints value 1.0 into
/// channel `k` only; the rest of the canvas stays 0.
pub fn xysquares_generate(params: &XySquaresParams, pos: &FactorPos) -> Result<Observation> {
    let mut obs = Observation::zeros(3, params.image_size, params.image_size);
    xysquares_generate_into(params, pos, &mut obs)?;
    Ok(obs)
}

/// Allocation-free variant of [`xysquares_generate`].
pub fn xysquares_generate_into(
    params: &XySquaresParams,
    pos: &FactorPos,
    out: &mut Observation,
) -> Result<()> {
    params.validate()?;
    params.factor_space().validate_pos(pos)?;
    let size = params.image_size;
    if out.shape() != (3, size, size) {
        *out = Observation::zeros(3, size, size);
    } else {
        out.data.fill(0.0);
    }
    for k in 0..params.num_squares {
        let x0 = pos.0[2 * k] * params.spacing;
        let y0 = pos.0[2 * k + 1] * params.spacing;
        let ch = out.channel_mut(k);
        for y in y0..y0 + params.square_size {
            let row = y * size;
            ch[row + x0..row + x0 + params.square_size].fill(1.0);
        }
    }
    Ok(())
}

/// Single white 1-pixel dot on a black single-channel canvas; factors (x, y).
/// A minimal dataset for training smoke tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DotsParams {
    pub grid_w: usize,
    pub grid_h: usize,
}

impl DotsParams {
    pub fn factor_space(&self) -> FactorSpace {
        FactorSpace::new(&[self.grid_w, self.grid_h]).expect("positive sizes")
    }
}

/// Per-channel normalisation constants. Computed as the mean over
/// observations of each observation's per-channel mean and sample standard
/// deviation (over the H*W pixels of that observation).
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelStats {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl ChannelStats {
    pub fn channels(&self) -> usize {
        self.mean.len()
    }
}

/// Backing storage for an array dataset loaded from file.
#[derive(Debug, Clone)]
pub enum ArrayStorage {
    /// `scale` maps stored bytes to [0,1]: 1.0 for binary data, 1/255 otherwise.
    U8 { data: Vec<u8>, scale: f64 },
    F32(Vec<f32>),
    F64(Vec<f64>),
}

/// Memory layout of the source array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayLayout {
    Nhw,
    Nhwc,
    Nchw,
}

impl ArrayLayout {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nhw" => Ok(Self::Nhw),
            "nhwc" => Ok(Self::Nhwc),
            "nchw" => Ok(Self::Nchw),
            other => Err(Error::Manifest(format!("unknown layout tag {other:?}"))),
        }
    }
}

/// File-backed observations with O(1) retrieval by linear index.
#[derive(Debug, Clone)]
pub struct ArrayDataset {
    storage: ArrayStorage,
    layout: ArrayLayout,
    count: usize,
    channels: usize,
    height: usize,
    width: usize,
}

impl ArrayDataset {
    pub fn from_npy(array: NpyArray, layout: ArrayLayout) -> Result<Self> {
        let (count, channels, height, width) = match (layout, array.shape.as_slice()) {
            (ArrayLayout::Nhw, [n, h, w]) => (*n, 1, *h, *w),
            (ArrayLayout::Nhwc, [n, h, w, c]) => (*n, *c, *h, *w),
            (ArrayLayout::Nchw, [n, c, h, w]) => (*n, *c, *h, *w),
            (_, shape) => {
                return Err(Error::InvalidParams(format!(
                    "array shape {shape:?} does not match layout {layout:?}"
                )))
            }
        };
        if count == 0 {
            return Err(Error::EmptyDataset);
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidParams(format!(
                "unsupported channel count {channels}, expected 1 or 3"
            )));
        }
        let storage = match array.data {
            NpyData::U8(data) => {
                // Binary masks stay {0,1}; anything else is 8-bit intensity.
                let binary = data.iter().all(|&v| v <= 1);
                let scale = if binary { 1.0 } else { 1.0 / 255.0 };
                ArrayStorage::U8 { data, scale }
            }
            NpyData::F32(data) => ArrayStorage::F32(data),
            NpyData::F64(data) => ArrayStorage::F64(data),
        };
        Ok(Self {
            storage,
            layout,
            count,
            channels,
            height,
            width,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    fn fetch_into(&self, index: usize, out: &mut Observation) {
        let (c, h, w) = (self.channels, self.height, self.width);
        if out.shape() != (c, h, w) {
            *out = Observation::zeros(c, h, w);
        }
        let plane = h * w;
        let base = index * c * plane;
        let read = |flat: usize| -> f64 {
            match &self.storage {
                ArrayStorage::U8 { data, scale } => data[flat] as f64 * scale,
                ArrayStorage::F32(data) => data[flat] as f64,
                ArrayStorage::F64(data) => data[flat],
            }
        };
        match self.layout {
            // nhw and nchw share channel-first element order per observation.
            ArrayLayout::Nhw | ArrayLayout::Nchw => {
                for (i, v) in out.data.iter_mut().enumerate() {
                    *v = read(base + i);
                }
            }
            ArrayLayout::Nhwc => {
                for ch in 0..c {
                    for p in 0..plane {
                        out.data[ch * plane + p] = read(base + p * c + ch);
                    }
                }
            }
        }
    }
}

/// Where observations come from.
#[derive(Debug, Clone)]
pub enum DatasetSource {
    XySquares(XySquaresParams),
    Dots(DotsParams),
    /// Every observation is the same constant image; test aid.
    Constant { value: f64, channels: usize, size: usize },
    Array(ArrayDataset),
}

/// A complete ground-truth dataset: a factor space plus a way to retrieve
/// the observation rendered at any coordinate. Read-only after construction.
#[derive(Debug, Clone)]
pub struct GroundTruthDataset {
    name: String,
    space: FactorSpace,
    source: DatasetSource,
    factor_names: Vec<String>,
    channels: usize,
    height: usize,
    width: usize,
}

impl GroundTruthDataset {
    pub fn xysquares(params: XySquaresParams) -> Result<Self> {
        params.validate()?;
        let space = params.factor_space();
        let factor_names = params.factor_names();
        Ok(Self {
            name: format!("xysquares-s{}", params.spacing),
            space,
            factor_names,
            channels: 3,
            height: params.image_size,
            width: params.image_size,
            source: DatasetSource::XySquares(params),
        })
    }

    pub fn dots(params: DotsParams) -> Result<Self> {
        if params.grid_w == 0 || params.grid_h == 0 {
            return Err(Error::InvalidParams("dots: grid must be positive".into()));
        }
        Ok(Self {
            name: "dots".into(),
            space: params.factor_space(),
            factor_names: vec!["x".into(), "y".into()],
            channels: 1,
            height: params.grid_h,
            width: params.grid_w,
            source: DatasetSource::Dots(params),
        })
    }

    pub fn constant(value: f64, channels: usize, size: usize, sizes: &[usize]) -> Result<Self> {
        let space = FactorSpace::new(sizes)?;
        Ok(Self {
            name: "constant".into(),
            space,
            factor_names: (0..sizes.len()).map(|i| format!("f{i}")).collect(),
            channels,
            height: size,
            width: size,
            source: DatasetSource::Constant { value, channels, size },
        })
    }

    pub fn from_array(
        name: &str,
        array: ArrayDataset,
        factor_sizes: &[usize],
        factor_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let space = FactorSpace::new(factor_sizes)?;
        if space.total() != array.count() {
            return Err(Error::InvalidParams(format!(
                "factor grid has {} cells but array holds {} observations",
                space.total(),
                array.count()
            )));
        }
        let factor_names = match factor_names {
            Some(names) => {
                if names.len() != factor_sizes.len() {
                    return Err(Error::Manifest("factor name count != factor count".into()));
                }
                names
            }
            None => (0..factor_sizes.len()).map(|i| format!("f{i}")).collect(),
        };
        Ok(Self {
            name: name.to_string(),
            space,
            factor_names,
            channels: array.channels,
            height: array.height,
            width: array.width,
            source: DatasetSource::Array(array),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &FactorSpace {
        &self.space
    }

    pub fn factor_names(&self) -> &[String] {
        &self.factor_names
    }

    pub fn obs_shape(&self) -> (usize, usize, usize) {
        (self.channels, self.height, self.width)
    }

    pub fn observation(&self, pos: &FactorPos) -> Result<Observation> {
        let mut obs = Observation::zeros(self.channels, self.height, self.width);
        self.observation_into(pos, &mut obs)?;
        Ok(obs)
    }

    pub fn observation_into(&self, pos: &FactorPos, out: &mut Observation) -> Result<()> {
        self.space.validate_pos(pos)?;
        match &self.source {
            DatasetSource::XySquares(params) => xysquares_generate_into(params, pos, out)?,
            DatasetSource::Dots(params) => {
                if out.shape() != (1, params.grid_h, params.grid_w) {
                    *out = Observation::zeros(1, params.grid_h, params.grid_w);
                } else {
                    out.data.fill(0.0);
                }
                out.data[pos.0[1] * params.grid_w + pos.0[0]] = 1.0;
            }
            DatasetSource::Constant { value, channels, size } => {
                if out.shape() != (*channels, *size, *size) {
                    *out = Observation::zeros(*channels, *size, *size);
                }
                out.data.fill(*value);
            }
            DatasetSource::Array(array) => {
                let idx = self.space.pos_to_index(pos)?;
                array.fetch_into(idx, out);
            }
        }
        Ok(())
    }
}

/// How many observations to visit when estimating channel statistics.
#[derive(Debug, Clone, Copy)]
pub enum StatsScan {
    /// Every grid cell once, in index order.
    Exhaustive,
    /// `count` uniform draws.
    Sampled { count: usize },
}

/// Per-channel mean/std of raw observations: each observation contributes
/// its per-channel pixel mean and Bessel-corrected pixel std; the dataset
/// constants are the averages of those contributions.
pub fn channel_stats(ds: &GroundTruthDataset, scan: StatsScan, rng: &mut Rng) -> Result<ChannelStats> {
    let (c, h, w) = ds.obs_shape();
    let n_px = h * w;
    if n_px < 2 {
        return Err(Error::InvalidParams("channel stats need >= 2 pixels per image".into()));
    }
    let count = match scan {
        StatsScan::Exhaustive => ds.space().total(),
        StatsScan::Sampled { count } => count,
    };
    if count == 0 {
        return Err(Error::EmptyDataset);
    }

    let positions: Vec<FactorPos> = match scan {
        StatsScan::Exhaustive => (0..count).map(|i| ds.space().index_to_pos(i).unwrap()).collect(),
        StatsScan::Sampled { .. } => (0..count).map(|_| ds.space().sample_pos(rng)).collect(),
    };

    // Chunked so the reduction order is fixed regardless of thread count.
    use rayon::prelude::*;
    const CHUNK: usize = 2048;
    let partials: Vec<(Vec<f64>, Vec<f64>)> = positions
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut mean_acc = vec![0.0; c];
            let mut std_acc = vec![0.0; c];
            let mut obs = Observation::zeros(c, h, w);
            for pos in chunk {
                ds.observation_into(pos, &mut obs).expect("validated position");
                for ch in 0..c {
                    let plane = obs.channel(ch);
                    let (mut s, mut s2) = (0.0, 0.0);
                    for &v in plane {
                        s += v;
                        s2 += v * v;
                    }
                    let m = s / n_px as f64;
                    let var = ((s2 - s * m).max(0.0)) / (n_px - 1) as f64;
                    mean_acc[ch] += m;
                    std_acc[ch] += var.sqrt();
                }
            }
            (mean_acc, std_acc)
        })
        .collect();

    let mut mean = vec![0.0; c];
    let mut std = vec![0.0; c];
    for (m, s) in partials {
        for ch in 0..c {
            mean[ch] += m[ch];
            std[ch] += s[ch];
        }
    }
    for ch in 0..c {
        mean[ch] /= count as f64;
        std[ch] /= count as f64;
        if std[ch] <= 0.0 {
            return Err(Error::ZeroStd(ch));
        }
    }
    Ok(ChannelStats { mean, std })
}

/// `out[c] = (in[c] - mean[c]) / std[c]`.
pub fn standardise(obs: &Observation, stats: &ChannelStats) -> Result<Observation> {
    if stats.channels() != obs.channels {
        return Err(Error::ChannelMismatch {
            stats: stats.channels(),
            obs: obs.channels,
        });
    }
    let mut out = obs.clone();
    for c in 0..obs.channels {
        let (m, s) = (stats.mean[c], stats.std[c]);
        for v in out.channel_mut(c) {
            *v = (*v - m) / s;
        }
    }
    Ok(out)
}

/// Inverse of [`standardise`].
pub fn destandardise(obs: &Observation, stats: &ChannelStats) -> Result<Observation> {
    if stats.channels() != obs.channels {
        return Err(Error::ChannelMismatch {
            stats: stats.channels(),
            obs: obs.channels,
        });
    }
    let mut out = obs.clone();
    for c in 0..obs.channels {
        let (m, s) = (stats.mean[c], stats.std[c]);
        for v in out.channel_mut(c) {
            *v = *v * s + m;
        }
    }
    Ok(out)
}

/// Separable bilinear resize, align-corners-false convention.
pub fn resize_bilinear(obs: &Observation, out_h: usize, out_w: usize) -> Result<Observation> {
    if out_h == 0 || out_w == 0 {
        return Err(Error::InvalidParams("resize target must be positive".into()));
    }
    if out_h == obs.height && out_w == obs.width {
        return Ok(obs.clone());
    }
    let (in_h, in_w) = (obs.height, obs.width);
    let scale_y = in_h as f64 / out_h as f64;
    let scale_x = in_w as f64 / out_w as f64;
    let coord = |d: usize, scale: f64, limit: usize| -> (usize, usize, f64) {
        let src = ((d as f64 + 0.5) * scale - 0.5).clamp(0.0, (limit - 1) as f64);
        let lo = src.floor() as usize;
        let hi = (lo + 1).min(limit - 1);
        (lo, hi, src - lo as f64)
    };
    let xs: Vec<(usize, usize, f64)> = (0..out_w).map(|x| coord(x, scale_x, in_w)).collect();
    let ys: Vec<(usize, usize, f64)> = (0..out_h).map(|y| coord(y, scale_y, in_h)).collect();
    let mut out = Observation::zeros(obs.channels, out_h, out_w);
    for c in 0..obs.channels {
        let src = obs.channel(c);
        let dst = out.channel_mut(c);
        for (yo, &(y0, y1, fy)) in ys.iter().enumerate() {
            for (xo, &(x0, x1, fx)) in xs.iter().enumerate() {
                let top = src[y0 * in_w + x0] * (1.0 - fx) + src[y0 * in_w + x1] * fx;
                let bot = src[y1 * in_w + x0] * (1.0 - fx) + src[y1 * in_w + x1] * fx;
                dst[yo * out_w + xo] = top * (1.0 - fy) + bot * fy;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn xysquares_origin_observation() {
        let params = XySquaresParams::default();
        let obs = xysquares_generate(&params, &FactorPos(vec![0; 6])).unwrap();
        for c in 0..3 {
            let plane = obs.channel(c);
            let active: usize = plane.iter().filter(|&&v| v == 1.0).count();
            assert_eq!(active, 64);
            for y in 0..8 {
                for x in 0..8 {
                    assert_eq!(plane[y * 64 + x], 1.0);
                }
            }
        }
    }

    #[test]
    fn xysquares_determinism_and_active_count() {
        let params = XySquaresParams::default();
        let space = params.factor_space();
        let mut rng = rng_from_seed(5);
        for _ in 0..16 {
            let pos = space.sample_pos(&mut rng);
            let a = xysquares_generate(&params, &pos).unwrap();
            let b = xysquares_generate(&params, &pos).unwrap();
            assert_eq!(a, b);
            for c in 0..3 {
                let active: usize = a.channel(c).iter().filter(|&&v| v == 1.0).count();
                assert_eq!(active, params.square_size * params.square_size);
            }
        }
    }

    #[test]
    fn xysquares_single_factor_step_diff() {
        // Moving x_R by >= 1 grid step at spacing 8 changes exactly 128
        // values, all in channel R (brute-force pixel diff).
        let params = XySquaresParams::default();
        let a = xysquares_generate(&params, &FactorPos(vec![0, 0, 2, 3, 4, 5])).unwrap();
        for step in 1..8 {
            let b = xysquares_generate(&params, &FactorPos(vec![step, 0, 2, 3, 4, 5])).unwrap();
            let mut diffs_r = 0;
            let mut diffs_other = 0;
            for (i, (&va, &vb)) in a.data.iter().zip(&b.data).enumerate() {
                if va != vb {
                    if i < 64 * 64 {
                        diffs_r += 1;
                    } else {
                        diffs_other += 1;
                    }
                }
            }
            assert_eq!(diffs_r, 128, "step {step}");
            assert_eq!(diffs_other, 0);
        }
    }

    #[test]
    fn xysquares_invalid_params() {
        let params = XySquaresParams {
            spacing: 9,
            ..Default::default()
        };
        assert!(matches!(params.validate(), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn xysquares_table_constants() {
        // Every observation carries identical per-image stats, so one image
        // determines the dataset constants: mean 64/4096, std sqrt(63/4095).
        let ds = GroundTruthDataset::xysquares(XySquaresParams::default()).unwrap();
        let mut rng = rng_from_seed(0);
        let stats = channel_stats(&ds, StatsScan::Sampled { count: 4 }, &mut rng).unwrap();
        for c in 0..3 {
            assert!((stats.mean[c] - 0.015625).abs() < 1e-15);
            assert!((stats.std[c] - 0.124034734589209).abs() < 1e-12);
        }
    }

    #[test]
    fn channel_stats_zero_std_is_error() {
        let ds = GroundTruthDataset::constant(0.5, 1, 4, &[3, 2]).unwrap();
        let mut rng = rng_from_seed(0);
        let err = channel_stats(&ds, StatsScan::Exhaustive, &mut rng);
        assert!(matches!(err, Err(Error::ZeroStd(0))));
    }

    #[test]
    fn standardise_round_trip_and_zero_mean() {
        let ds = GroundTruthDataset::xysquares(XySquaresParams::default()).unwrap();
        let mut rng = rng_from_seed(1);
        let stats = channel_stats(&ds, StatsScan::Sampled { count: 8 }, &mut rng).unwrap();

        let flat = Observation {
            channels: 3,
            height: 2,
            width: 2,
            data: stats
                .mean
                .iter()
                .flat_map(|&m| std::iter::repeat(m).take(4))
                .collect(),
        };
        let z = standardise(&flat, &stats).unwrap();
        assert!(z.data.iter().all(|&v| v.abs() < 1e-12));

        let pos = ds.space().sample_pos(&mut rng);
        let obs = ds.observation(&pos).unwrap();
        let z = standardise(&obs, &stats).unwrap();
        let back = destandardise(&z, &stats).unwrap();
        for (a, b) in obs.data.iter().zip(&back.data) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn standardised_dataset_has_unit_moments() {
        // Recompute pooled moments over the standardised reduced dataset.
        let params = XySquaresParams {
            image_size: 16,
            square_size: 4,
            grid_points: 4,
            spacing: 4,
            num_squares: 2,
        };
        let ds = GroundTruthDataset::xysquares(params).unwrap();
        let mut rng = rng_from_seed(2);
        let stats = channel_stats(&ds, StatsScan::Exhaustive, &mut rng).unwrap();
        let mut rng2 = rng_from_seed(3);
        let restats = {
            // Stats of the standardised data, same per-image convention.
            let mut mean_acc = vec![0.0; 3];
            let mut std_acc = vec![0.0; 3];
            let total = ds.space().total();
            for i in 0..total {
                let pos = ds.space().index_to_pos(i).unwrap();
                let z = standardise(&ds.observation(&pos).unwrap(), &stats).unwrap();
                for c in 0..3 {
                    let plane = z.channel(c);
                    let n = plane.len() as f64;
                    let m: f64 = plane.iter().sum::<f64>() / n;
                    let var: f64 = plane.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0);
                    mean_acc[c] += m;
                    std_acc[c] += var.sqrt();
                }
            }
            let _ = &mut rng2;
            (
                mean_acc.iter().map(|v| v / ds.space().total() as f64).collect::<Vec<_>>(),
                std_acc.iter().map(|v| v / ds.space().total() as f64).collect::<Vec<_>>(),
            )
        };
        for c in 0..3 {
            assert!(restats.0[c].abs() < 1e-6, "mean {:?}", restats.0);
            assert!((restats.1[c] - 1.0).abs() < 1e-6, "std {:?}", restats.1);
        }
    }

    #[test]
    fn resize_identity_and_constant() {
        let params = XySquaresParams::default();
        let obs = xysquares_generate(&params, &FactorPos(vec![1, 2, 3, 4, 5, 6])).unwrap();
        let same = resize_bilinear(&obs, 64, 64).unwrap();
        assert_eq!(obs, same);

        let constant = Observation {
            channels: 1,
            height: 5,
            width: 7,
            data: vec![0.37; 35],
        };
        for (h, w) in [(3, 3), (9, 2), (16, 16)] {
            let r = resize_bilinear(&constant, h, w).unwrap();
            assert!(r.data.iter().all(|&v| (v - 0.37).abs() < 1e-12));
        }
    }

    #[test]
    fn resize_checkerboard_box_average() {
        // 4x4 checkerboard downscaled 2x samples at source coords 0.5/2.5,
        // i.e. the exact average of each 2x2 block = 0.5.
        let mut data = vec![0.0; 16];
        for y in 0..4 {
            for x in 0..4 {
                data[y * 4 + x] = ((x + y) % 2) as f64;
            }
        }
        let obs = Observation {
            channels: 1,
            height: 4,
            width: 4,
            data,
        };
        let r = resize_bilinear(&obs, 2, 2).unwrap();
        for &v in &r.data {
            assert!((v - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn dots_observation() {
        let ds = GroundTruthDataset::dots(DotsParams { grid_w: 8, grid_h: 8 }).unwrap();
        let obs = ds.observation(&FactorPos(vec![3, 5])).unwrap();
        assert_eq!(obs.data.iter().filter(|&&v| v == 1.0).count(), 1);
        assert_eq!(obs.data[5 * 8 + 3], 1.0);
    }
}
