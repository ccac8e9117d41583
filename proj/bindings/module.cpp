// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "harmgate/config.hpp"
#include "harmgate/gating.hpp"
#include "harmgate/harmonic.hpp"
#include "harmgate/masking.hpp"
#include "harmgate/matrix_io.hpp"
#include "harmgate/metrics.hpp"
#include "harmgate/pipeline.hpp"
#include "harmgate/spectral.hpp"
#include "harmgate/version.hpp"
#include "harmgate/wav.hpp"

namespace py = pybind11;
using namespace harmgate;

PYBIND11_MODULE(_core, m) {
  m.doc() = "harmonic-gated speech enhancement core";
  m.attr("__version__") = kVersion;

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<AnalysisConfig>(m, "AnalysisConfig")
      .def(py::init<>())
      .def_readwrite("window_ms", &AnalysisConfig::window_ms)
      .def_readwrite("overlap_fraction", &AnalysisConfig::overlap_fraction)
      .def_readwrite("fft_size", &AnalysisConfig::fft_size)
      .def_readwrite("sample_rate", &AnalysisConfig::sample_rate)
      .def_property_readonly("win_length", &AnalysisConfig::win_length)
      .def_property_readonly("hop", &AnalysisConfig::hop)
      .def_property_readonly("bins", &AnalysisConfig::bins)
      .def_property_readonly("bin_hz", &AnalysisConfig::bin_hz)
      .def_static("wide_band", &AnalysisConfig::wide_band)
      .def_static("full_band", &AnalysisConfig::full_band);

  py::class_<AudioBuffer>(m, "AudioBuffer")
      .def(py::init<>())
      .def(py::init([](std::vector<double> samples, int sample_rate) {
             return AudioBuffer{std::move(samples), sample_rate};
           }),
           py::arg("samples"), py::arg("sample_rate"))
      .def_readwrite("samples", &AudioBuffer::samples)
      .def_readwrite("sample_rate", &AudioBuffer::sample_rate);

  py::class_<ComplexSpectrogram>(m, "ComplexSpectrogram")
      .def(py::init<>())
      .def_readwrite("re", &ComplexSpectrogram::re)
      .def_readwrite("im", &ComplexSpectrogram::im)
      .def_readwrite("frame_hop", &ComplexSpectrogram::frame_hop)
      .def_readwrite("bin_hz", &ComplexSpectrogram::bin_hz)
      .def_property_readonly("frames", &ComplexSpectrogram::frames)
      .def_property_readonly("bins", &ComplexSpectrogram::bins);

  py::class_<IntegralMatrix>(m, "IntegralMatrix")
      .def_readonly("values", &IntegralMatrix::values)
      .def_readonly("bin_hz", &IntegralMatrix::bin_hz);

  py::class_<PitchTrack>(m, "PitchTrack")
      .def_readonly("candidate", &PitchTrack::candidate)
      .def_readonly("pitch_hz", &PitchTrack::pitch_hz)
      .def_readonly("significance", &PitchTrack::significance)
      .def_property_readonly("frames", &PitchTrack::frames);

  py::class_<VrdState>(m, "VrdState")
      .def(py::init<>())
      .def_readwrite("xi", &VrdState::xi)
      .def_readwrite("alpha", &VrdState::alpha);

  py::class_<Kernel>(m, "Kernel")
      .def_readonly("w", &Kernel::w)
      .def_readonly("time_origin", &Kernel::time_origin)
      .def_static("identity", &Kernel::identity)
      .def_static("box", &Kernel::box, py::arg("kt"), py::arg("kf"));

  py::class_<LossReport>(m, "LossReport")
      .def_readonly("l_hb", &LossReport::l_hb)
      .def_readonly("l_apc_coarse", &LossReport::l_apc_coarse)
      .def_readonly("l_apc_refined", &LossReport::l_apc_refined)
      .def_readonly("l_focal", &LossReport::l_focal)
      .def_readonly("total", &LossReport::total);

  m.def("stft", &stft, py::arg("audio"), py::arg("cfg"));
  m.def("istft", &istft, py::arg("spec"), py::arg("cfg"));
  m.def("split_bands", &split_bands, py::arg("full"));
  m.def("merge_bands", &merge_bands, py::arg("wb"), py::arg("hb"));
  m.def("compress_power", &compress_power, py::arg("spec"), py::arg("exponent"));
  m.def("mag_phase",
        [](const ComplexSpectrogram& spec) {
          MagPhase mp = mag_phase(spec);
          return py::make_tuple(mp.magnitude, mp.phase);
        },
        py::arg("spec"));
  m.def("polar",
        [](const MatD& magnitude, const MatD& phase, int frame_hop, double bin_hz) {
          return polar(MagPhase{magnitude, phase}, frame_hop, bin_hz);
        },
        py::arg("magnitude"), py::arg("phase"), py::arg("frame_hop") = 0,
        py::arg("bin_hz") = 0.0);

  m.def("build_integral_matrix", &build_integral_matrix, py::arg("bins"), py::arg("bin_hz"));
  m.def("significance", &significance, py::arg("coarse_mag"), py::arg("U"));
  m.def("select_pitch", &select_pitch, py::arg("Q"));
  m.def("mask_unvoiced", &mask_unvoiced, py::arg("track"), py::arg("flags"));
  m.def("harmonic_template", &harmonic_template, py::arg("track"), py::arg("bins"),
        py::arg("bin_hz"));
  m.def("candidate_hz", &candidate_hz, py::arg("j"));

  m.def("sed_labels", &sed_labels, py::arg("clean_mag"));
  m.def("vrd", &vrd, py::arg("Q"), py::arg("state"));
  m.def("compose_gate", &compose_gate, py::arg("vrd_flags"), py::arg("ra"), py::arg("rh"));
  m.def("smooth_gate", &smooth_gate, py::arg("gate"), py::arg("kernel"));
  m.def("parse_kernel", &parse_kernel, py::arg("spec"));

  m.def("apply_mask_magnitude", &apply_mask_magnitude, py::arg("spec"), py::arg("logits"));
  m.def("apply_mask_complex", &apply_mask_complex, py::arg("spec"), py::arg("m_re"),
        py::arg("m_im"));
  m.def("apply_gated_compensation", &apply_gated_compensation, py::arg("spec"),
        py::arg("gate"), py::arg("logits"));
  m.def("oracle_magnitude_mask", &oracle_magnitude_mask, py::arg("noisy"), py::arg("clean"));
  m.def("oracle_complex_mask", &oracle_complex_mask, py::arg("noisy"), py::arg("clean"));
  m.def("oracle_compensation_mask", &oracle_compensation_mask, py::arg("coarse"),
        py::arg("clean"), py::arg("gate"));

  m.def("si_snr", &si_snr, py::arg("est"), py::arg("ref"));
  m.def("apc_snr",
        [](const ComplexSpectrogram& est, const ComplexSpectrogram& ref, double gamma) {
          return apc_snr(est, ref, LoudnessExponent::constant(gamma, static_cast<int>(ref.bins())));
        },
        py::arg("est"), py::arg("ref"), py::arg("gamma") = 0.5);
  m.def("hb_loss", &hb_loss, py::arg("est_mag"), py::arg("ref_mag"));
  m.def("focal_loss", &focal_loss, py::arg("p"), py::arg("alpha") = 1.0, py::arg("beta") = 2.0);

  m.def("read_wav", &read_wav, py::arg("path"));
  m.def("write_wav",
        [](const std::string& path, const AudioBuffer& buf, const std::string& fmt) {
          write_wav(path, buf, fmt == "pcm16" ? WavFormat::pcm16 : WavFormat::float32);
        },
        py::arg("path"), py::arg("buf"), py::arg("fmt") = "float32");
  m.def("read_matrix", &read_matrix, py::arg("path"));
  m.def("write_matrix",
        [](const std::string& path, const MatF& m) { write_matrix(path, m); },
        py::arg("path"), py::arg("m"));
}
