#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace cms {

// Ambient vectors live in R^{n+1} with n <= 3; surface-index objects carry at
// most n slots. The fixed capacity keeps the small dynamic types off the heap.
using Vec     = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
using SurfVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;
using SurfMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;

// Regularity floor for det(S_ij); embeddings below it are treated as singular.
inline constexpr double kMetricDetFloor = 1e-14;

// Faces smaller than this fraction of the mean face area are rejected.
inline constexpr double kFaceAreaRelFloor = 1e-14;

class SingularEmbeddingError : public std::runtime_error {
 public:
  explicit SingularEmbeddingError(const std::string& msg) : std::runtime_error(msg) {}
};

class MeshTopologyError : public std::runtime_error {
 public:
  explicit MeshTopologyError(const std::string& msg) : std::runtime_error(msg) {}
};

class MeshQualityError : public std::runtime_error {
 public:
  explicit MeshQualityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Family time schedule leaves the embedding regular window, bad spec, etc.
class ScheduleError : public std::runtime_error {
 public:
  explicit ScheduleError(const std::string& msg) : std::runtime_error(msg) {}
};

class StencilError : public std::runtime_error {
 public:
  explicit StencilError(const std::string& msg) : std::runtime_error(msg) {}
};

class StepCollapseError : public std::runtime_error {
 public:
  explicit StepCollapseError(const std::string& msg) : std::runtime_error(msg) {}
};

class FieldDomainError : public std::runtime_error {
 public:
  explicit FieldDomainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cms
