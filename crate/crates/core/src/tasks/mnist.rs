//! MNIST in the IDX format.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ndarray::Array2;
use rand::Rng;

use crate::error::{Error, Result};
use crate::network::{DataSource, Stimulus};
use crate::seed::Stream;

pub const IMAGE_MAGIC: u32 = 0x0000_0803;
pub const LABEL_MAGIC: u32 = 0x0000_0801;
pub const N_PIXELS: usize = 784;
pub const N_CLASSES: usize = 10;

/// Environment variable naming the directory with the four IDX files.
pub const MNIST_DIR_ENV: &str = "INFOMORPH_MNIST_DIR";
pub const DEFAULT_MNIST_DIR: &str = "data/mnist";

/// Images kept as raw bytes; [`MnistDataset::image`] maps them to `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MnistDataset {
    pub rows: usize,
    pub cols: usize,
    pub pixels: Vec<u8>,
    pub labels: Vec<u8>,
}

#[inline]
pub fn scale_pixel(raw: u8) -> f64 {
    raw as f64 / 127.5 - 1.0
}

fn read_u32(bytes: &[u8], at: usize) -> Option<u32> {
    bytes.get(at..at + 4).map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
}

fn idx_error(path: &Path, reason: impl Into<String>) -> Error {
    Error::Idx {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

/// `(rows, cols, pixels)` from an IDX image file body.
pub fn parse_images(bytes: &[u8], path: &Path) -> Result<(usize, usize, usize, Vec<u8>)> {
    let magic = read_u32(bytes, 0).ok_or_else(|| idx_error(path, "truncated header"))?;
    if magic != IMAGE_MAGIC {
        return Err(idx_error(path, format!("bad image magic {magic:#010x}")));
    }
    let header: Vec<usize> = (1..4)
        .map(|i| read_u32(bytes, 4 * i).map(|v| v as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| idx_error(path, "truncated header"))?;
    let (n, rows, cols) = (header[0], header[1], header[2]);
    let body = &bytes[16..];
    if body.len() != n * rows * cols {
        return Err(idx_error(path, format!("expected {} pixel bytes, found {}", n * rows * cols, body.len())));
    }
    Ok((n, rows, cols, body.to_vec()))
}

pub fn parse_labels(bytes: &[u8], path: &Path) -> Result<Vec<u8>> {
    let magic = read_u32(bytes, 0).ok_or_else(|| idx_error(path, "truncated header"))?;
    if magic != LABEL_MAGIC {
        return Err(idx_error(path, format!("bad label magic {magic:#010x}")));
    }
    let n = read_u32(bytes, 4).ok_or_else(|| idx_error(path, "truncated header"))? as usize;
    let body = &bytes[8..];
    if body.len() != n {
        return Err(idx_error(path, format!("expected {n} labels, found {}", body.len())));
    }
    if let Some(bad) = body.iter().find(|&&l| l as usize >= N_CLASSES) {
        return Err(idx_error(path, format!("label {bad} out of range")));
    }
    Ok(body.to_vec())
}

impl MnistDataset {
    pub fn from_idx_bytes(images: &[u8], labels: &[u8], images_path: &Path, labels_path: &Path) -> Result<Self> {
        let (n, rows, cols, pixels) = parse_images(images, images_path)?;
        let labels = parse_labels(labels, labels_path)?;
        if labels.len() != n {
            return Err(idx_error(labels_path, format!("{} labels for {n} images", labels.len())));
        }
        Ok(Self { rows, cols, pixels, labels })
    }

    pub fn load(images_path: &Path, labels_path: &Path) -> Result<Self> {
        let images = fs::read(images_path).map_err(|e| idx_error(images_path, e.to_string()))?;
        let labels = fs::read(labels_path).map_err(|e| idx_error(labels_path, e.to_string()))?;
        Self::from_idx_bytes(&images, &labels, images_path, labels_path)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n_pixels(&self) -> usize {
        self.rows * self.cols
    }

    pub fn raw_image(&self, i: usize) -> &[u8] {
        let d = self.n_pixels();
        &self.pixels[i * d..(i + 1) * d]
    }

    pub fn image(&self, i: usize) -> Vec<f64> {
        self.raw_image(i).iter().map(|&p| scale_pixel(p)).collect()
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i] as usize
    }

    pub fn stimulus(&self, i: usize) -> Stimulus {
        Stimulus::labelled(self.image(i), self.label(i))
    }

    /// All images as an `N × pixels` matrix in `[-1, 1]`.
    pub fn matrix_f32(&self) -> Array2<f32> {
        Array2::from_shape_vec((self.len(), self.n_pixels()), self.pixels.iter().map(|&p| scale_pixel(p) as f32).collect())
            .expect("pixel count matches shape")
    }

    /// All images as an `N × pixels` matrix in `[0, 1]`.
    pub fn matrix_f32_unit(&self) -> Array2<f32> {
        Array2::from_shape_vec((self.len(), self.n_pixels()), self.pixels.iter().map(|&p| p as f32 / 255.0).collect())
            .expect("pixel count matches shape")
    }

    pub fn labels_usize(&self) -> Vec<usize> {
        self.labels.iter().map(|&l| l as usize).collect()
    }

    pub fn images_to_idx(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + self.pixels.len());
        for v in [IMAGE_MAGIC, self.len() as u32, self.rows as u32, self.cols as u32] {
            out.extend_from_slice(&v.to_be_bytes());
        }
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn labels_to_idx(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.labels.len());
        out.extend_from_slice(&LABEL_MAGIC.to_be_bytes());
        out.extend_from_slice(&(self.len() as u32).to_be_bytes());
        out.extend_from_slice(&self.labels);
        out
    }
}

/// The standard train and test splits.
#[derive(Debug, Clone)]
pub struct Mnist {
    pub train: Arc<MnistDataset>,
    pub test: Arc<MnistDataset>,
}

/// `dir` if given, else `$INFOMORPH_MNIST_DIR`, else `data/mnist`.
pub fn mnist_dir(dir: Option<&Path>) -> PathBuf {
    dir.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(MNIST_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_MNIST_DIR))
}

pub fn load_mnist(dir: &Path) -> Result<Mnist> {
    let train = MnistDataset::load(&dir.join("train-images-idx3-ubyte"), &dir.join("train-labels-idx1-ubyte"))?;
    let test = MnistDataset::load(&dir.join("t10k-images-idx3-ubyte"), &dir.join("t10k-labels-idx1-ubyte"))?;
    Ok(Mnist {
        train: Arc::new(train),
        test: Arc::new(test),
    })
}

/// Uniform sampling with replacement from a dataset, images rendered on demand.
#[derive(Debug, Clone)]
pub struct MnistSource {
    data: Arc<MnistDataset>,
}

impl MnistSource {
    pub fn new(data: Arc<MnistDataset>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptySamples);
        }
        Ok(Self { data })
    }
}

impl DataSource for MnistSource {
    fn next_stimulus(&mut self, rng: &mut Stream) -> Result<Stimulus> {
        Ok(self.data.stimulus(rng.gen_range(0..self.data.len())))
    }
}
