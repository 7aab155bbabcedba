// Copyright 2026 The qdqn Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <array>
#include <charconv>
#include <fstream>
#include <numbers>

#include "qdqn/error.hpp"
#include "qdqn/harness.hpp"

namespace qdqn::harness {

namespace {

constexpr std::array<const char *, 4> kDimNames{"x", "x_dot", "phi", "phi_dot"};
constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kPlanes{
    {{0, 1}, {2, 3}, {0, 2}}};

std::string num(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

double gridValue(std::size_t i, std::size_t resolution, double half) {
    if (resolution == 1) {
        return 0.0;
    }
    const auto span = static_cast<double>(resolution - 1);
    return half * (2.0 * static_cast<double>(i) - span) / span;
}

} // namespace

double surfaceHalfRange(std::size_t dim) {
    switch (dim) {
    case 0:
        return 2.4;
    case 1:
        return 3.0;
    case 2:
        return 12.0 * std::numbers::pi / 180.0;
    case 3:
        return 3.0;
    default:
        abort("Cart Pole state has 4 dimensions");
    }
}

std::vector<SurfaceSlice> qSurface(const dqn::QFunction &model,
                                   std::span<const double> params,
                                   std::size_t resolution) {
    QDQN_ABORT_IF(resolution == 0, "surface resolution must be positive");
    QDQN_ABORT_IF(model.numActions() != 2, "Q surfaces need a two-action Cart Pole model");
    std::vector<SurfaceSlice> slices;
    for (const auto &[da, db] : kPlanes) {
        SurfaceSlice slice{da, db, {}};
        slice.points.reserve(resolution * resolution);
        for (std::size_t i = 0; i < resolution; ++i) {
            for (std::size_t j = 0; j < resolution; ++j) {
                Observation s(4, 0.0);
                s[da] = gridValue(i, resolution, surfaceHalfRange(da));
                s[db] = gridValue(j, resolution, surfaceHalfRange(db));
                const auto q = model.qValues(params, s);
                slice.points.push_back({s[da], s[db], q[0], q[1]});
            }
        }
        slices.push_back(std::move(slice));
    }
    return slices;
}

std::string surfaceCsv(const SurfaceSlice &slice) {
    std::string out = "dim_a,dim_b,q_left,q_right\n";
    for (const auto &p : slice.points) {
        out += num(p.a) + ',' + num(p.b) + ',' + num(p.q_left) + ',' + num(p.q_right) + '\n';
    }
    return out;
}

void writeQSurface(std::span<const SurfaceSlice> slices, const std::filesystem::path &dir) {
    for (const auto &slice : slices) {
        const auto file = dir / (std::string("q_surface_") + kDimNames.at(slice.dim_a) + "_" +
                                 kDimNames.at(slice.dim_b) + ".csv");
        std::ofstream out(file, std::ios::binary);
        QDQN_ABORT_IF(!out, "cannot write " + file.string());
        out << surfaceCsv(slice);
        QDQN_ABORT_IF(!out, "write failed for " + file.string());
    }
}

} // namespace qdqn::harness
