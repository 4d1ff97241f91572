// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/spectrogram_io.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <string>

#include "modwd/error.h"

namespace modwd {

namespace {

template <typename U>
void PutLe(std::vector<unsigned char> *out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i)
    out->push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

template <typename U>
U GetLe(const unsigned char *p) {
  U v = 0;
  for (std::size_t i = sizeof(U); i-- > 0;) v = static_cast<U>((v << 8) | p[i]);
  return v;
}

}  // namespace

std::vector<unsigned char> ReadFileBytes(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::filesystem::path &path,
                    std::span<const unsigned char> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

void WritePlaneCsv(const std::filesystem::path &path, const Plane &plane) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot create " + path.string());
  out << std::setprecision(17);
  for (std::size_t r = 0; r < plane.rows(); ++r) {
    auto row = plane.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

void WritePlaneFloat32(const std::filesystem::path &path, const Plane &plane) {
  std::vector<unsigned char> bytes;
  bytes.reserve(plane.data().size() * 4);
  for (double v : plane.data())
    PutLe(&bytes, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  WriteFileBytes(path, bytes);
}

Plane ReadPlaneFloat32(const std::filesystem::path &path, std::size_t rows,
                       std::size_t cols) {
  std::vector<unsigned char> bytes = ReadFileBytes(path);
  if (bytes.size() != rows * cols * 4)
    throw Error(ErrorCode::kDimensionMismatch,
                path.string() + " does not hold a " + std::to_string(rows) +
                    "x" + std::to_string(cols) + " float32 grid");
  Plane plane(rows, cols);
  for (std::size_t i = 0; i < plane.data().size(); ++i)
    plane.data()[i] =
        std::bit_cast<float>(GetLe<std::uint32_t>(bytes.data() + 4 * i));
  return plane;
}

std::vector<unsigned char> EncodePhaseRecord(const PhaseRecord &record) {
  std::vector<unsigned char> out = {'M', 'W', 'P', 'H'};
  PutLe<std::uint32_t>(&out, kPhaseFormatVersion);
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(record.phase.rows()));
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(record.phase.cols()));
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(record.params.frame_len));
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(record.params.hop));
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(record.params.fft_size));
  PutLe<std::uint32_t>(
      &out, record.params.window == WindowKind::kHammingPeriodic ? 1u : 0u);
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(record.sample_rate_hz));
  for (double v : record.phase.data())
    PutLe(&out, std::bit_cast<std::uint64_t>(v));
  return out;
}

PhaseRecord DecodePhaseRecord(std::span<const unsigned char> bytes) {
  constexpr std::size_t kHeader = 4 + 8 * 4;
  if (bytes.size() < kHeader || std::memcmp(bytes.data(), "MWPH", 4) != 0)
    throw Error(ErrorCode::kVersionError, "not a phase record");
  const unsigned char *p = bytes.data() + 4;
  auto next = [&p] {
    auto v = GetLe<std::uint32_t>(p);
    p += 4;
    return v;
  };
  if (next() != kPhaseFormatVersion)
    throw Error(ErrorCode::kVersionError, "unsupported phase record version");
  const std::size_t rows = next(), cols = next();
  PhaseRecord rec;
  rec.params.frame_len = static_cast<int>(next());
  rec.params.hop = static_cast<int>(next());
  rec.params.fft_size = static_cast<int>(next());
  rec.params.window =
      next() == 1 ? WindowKind::kHammingPeriodic : WindowKind::kHamming;
  rec.sample_rate_hz = static_cast<int>(next());
  if (bytes.size() != kHeader + rows * cols * 8)
    throw Error(ErrorCode::kVersionError, "phase record size mismatch");
  rec.phase = Plane(rows, cols);
  for (double &v : rec.phase.data()) {
    v = std::bit_cast<double>(GetLe<std::uint64_t>(p));
    p += 8;
  }
  return rec;
}

}  // namespace modwd
