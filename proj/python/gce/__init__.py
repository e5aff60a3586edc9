"""Gaussian-based color image enhancement: float reference and hardware model."""

from ._gce import (
    conv_fixed,
    diff_stats,
    enhance,
    fps_model,
    gaussian_kernel,
    log2_fixed,
    log2_mitchell,
    mult8x8,
    psnr,
    read_ppm,
    simulate,
    streaming_latency,
    write_ppm,
)

__all__ = [
    "conv_fixed",
    "diff_stats",
    "enhance",
    "fps_model",
    "gaussian_kernel",
    "log2_fixed",
    "log2_mitchell",
    "mult8x8",
    "psnr",
    "read_ppm",
    "simulate",
    "streaming_latency",
    "write_ppm",
]
