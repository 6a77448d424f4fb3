#include "relfan/fixtures.hpp"

namespace relfan::fixtures {

namespace {

QMat qmat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vec> r;
  for (const auto& row : rows) {
    Vec v;
    for (long x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return QMat::from_rows(r, r.empty() ? 0 : r.front().size());
}

}  // namespace

DegenerationData fix_a() {
  QMat g = qmat({{0, -1}, {1, 0}});
  ZMat gamma = to_int(qmat({{1, 1}, {0, 1}}));
  return DegenerationData::make("fix-a", Pairing::make(g, -1), gamma, -1, {{0, -1, 1}, {-1, 0, 1}},
                                std::vector<GradedHodgeNumber>{{-2, -1, -1, 1}, {0, 0, 0, 1}});
}

DegenerationData fix_d() {
  QMat g = qmat({{0, 0, 2}, {0, -2, -1}, {2, -1, 0}});
  ZMat gamma = to_int(qmat({{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}));
  return DegenerationData::make("fix-d", Pairing::make(g, 1), gamma, -2, {{0, -2, 1}, {-1, -1, 1}, {-2, 0, 1}},
                                std::vector<GradedHodgeNumber>{{-4, -2, -2, 1}, {-2, -1, -1, 1}, {0, 0, 0, 1}});
}

DegenerationData trivial() {
  QMat g = qmat({{0, -1}, {1, 0}});
  ZMat gamma = to_int(qmat({{1, 0}, {0, 1}}));
  return DegenerationData::make("trivial", Pairing::make(g, -1), gamma, -1, {{0, -1, 1}, {-1, 0, 1}},
                                std::vector<GradedHodgeNumber>{{-1, 0, -1, 1}, {-1, -1, 0, 1}});
}

DegenerationData trivial_rank_one() {
  QMat g = qmat({{1}});
  ZMat gamma = to_int(qmat({{1}}));
  return DegenerationData::make("trivial-rank-one", Pairing::make(g, 1), gamma, -2, {{-1, -1, 1}},
                                std::vector<GradedHodgeNumber>{{-2, -1, -1, 1}});
}

}  // namespace relfan::fixtures
