#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "slantsurf/frame.hpp"
#include "slantsurf/slant.hpp"

namespace slantsurf {

// Per-sample CSV with the fixed column set
// s, c.x1..c.x3, q.*, h.*, a.*, k1, k2, ratio, det_q, det_a, f, delta.
// Missing series (detector not run / not applicable) print as nan.
void write_frames_csv(std::ostream& os, std::span<const FrameSample> frames,
                      const std::vector<double>* det_q_series = nullptr,
                      const std::vector<double>* det_a_series = nullptr,
                      const std::vector<double>* f_series = nullptr);

// Line-oriented "key: value" summary entries.
void write_kv(std::ostream& os, const std::string& key, const std::string& value);
void write_kv(std::ostream& os, const std::string& key, double value);

std::string format_axis(const LorentzVec3& v);

}  // namespace slantsurf
