# Copyright 2026 The harmgate authors
# License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

import numpy as np
import pytest

import harmgate


def test_version():
    assert harmgate.__version__ == "0.1.0"


def make_tone(hz, seconds=1.0, sr=16000, amp=0.4):
    t = np.arange(int(seconds * sr), dtype=np.float64) / sr
    return amp * np.sin(2 * np.pi * hz * t)


def test_stft_roundtrip():
    cfg = harmgate.AnalysisConfig.wide_band()
    assert (cfg.win_length, cfg.hop, cfg.bins) == (512, 384, 257)
    rng = np.random.default_rng(5)
    x = rng.normal(0, 0.3, 16000)
    spec = harmgate.stft(harmgate.AudioBuffer(x, 16000), cfg)
    assert (spec.frames, spec.bins) == (43, 257)
    back = np.asarray(harmgate.istft(spec, cfg).samples)
    assert back.size >= x.size
    assert np.abs(back[: x.size] - x).max() < 1e-12


def test_integral_matrix_and_pitch():
    U = harmgate.build_integral_matrix(257, 31.25)
    V = np.asarray(U.values)
    assert V.shape == (3600, 257)
    assert V.dtype == np.float32
    assert V[0, 2] == 1.0  # 60 Hz fundamental peak
    assert np.isfinite(V).all()

    # an ideal 200 Hz line spectrum scores candidate 1400 highest
    mag = np.zeros((1, 257))
    for k in range(1, 40):
        loc = round(200.0 * k / 31.25)
        if loc >= 257:
            break
        mag[0, loc] = 1.0
    Q = np.asarray(harmgate.significance(mag, U))
    assert Q.shape == (1, 3600)
    assert abs(int(Q[0].argmax()) - 1400) <= 10

    onehot = np.zeros((1, 3600), dtype=np.float32)
    onehot[0, 1400] = 1.0
    track = harmgate.select_pitch(onehot)
    assert track.candidate[0] == 1400
    assert track.pitch_hz[0] == 200.0
    assert harmgate.candidate_hz(1400) == 200.0


def test_apc_snr_matches_numpy_si_snr():
    rng = np.random.default_rng(11)
    cfg = harmgate.AnalysisConfig.wide_band()
    ref = harmgate.stft(harmgate.AudioBuffer(rng.normal(0, 0.3, 8000), 16000), cfg)
    est = harmgate.stft(
        harmgate.AudioBuffer(rng.normal(0, 0.3, 8000) * 0.2 + 0.1, 16000), cfg
    )
    got = harmgate.apc_snr(est, ref, gamma=1.0)

    def flatten(s):
        out = np.empty(2 * s.frames * s.bins)
        out[0::2] = np.asarray(s.re).ravel()
        out[1::2] = np.asarray(s.im).ravel()
        return out

    e, r = flatten(est), flatten(ref)
    a = np.dot(e, r) / np.dot(r, r)
    want = 10 * np.log10(np.sum((a * r) ** 2) / np.sum((e - a * r) ** 2))
    want = float(np.clip(want, -60, 60))
    assert got == pytest.approx(want, abs=1e-9)


def test_vrd_silence():
    Q = np.zeros((5, 3600), dtype=np.float32)
    flags, state = harmgate.vrd(Q, harmgate.VrdState())
    assert np.asarray(flags).max() == 0.0
    assert state.xi == 0.0


def test_error_mapping():
    cfg = harmgate.AnalysisConfig.wide_band()
    with pytest.raises(ValueError):
        harmgate.stft(harmgate.AudioBuffer([], 16000), cfg)
    with pytest.raises(ArithmeticError):
        harmgate.focal_loss(np.zeros((1, 1)))
