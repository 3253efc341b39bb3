#ifndef BOSEGAS_POTENTIAL_HPP
#define BOSEGAS_POTENTIAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "bosegas/common.hpp"

namespace bosegas {

/// Repulsive, compactly supported radial two-body interaction.
class RadialPotential {
  public:
    enum class Kind { hard_sphere, soft_sphere, tabulated, zero };

    static RadialPotential hard_sphere(double radius);
    static RadialPotential soft_sphere(double height, double radius);
    static RadialPotential tabulated(std::vector<std::pair<double, double>> samples);
    static RadialPotential zero();

    // Mini-language: hard:<r> | soft:<h>,<r> | table:<path> | zero
    static RadialPotential parse(const std::string& spec);

    Kind kind() const { return kind_; }
    double support_radius() const { return support_; }
    bool integrable() const { return kind_ != Kind::hard_sphere; }
    bool is_zero() const { return kind_ == Kind::zero; }

    // V(r); infinite cores are represented by the hard_sphere kind, never
    // evaluated (callers must branch on kind for hard spheres).
    double value(double r) const;

    double hard_radius() const;  // hard_sphere only
    double soft_height() const;  // soft_sphere only

    // Radii where V has a kink or jump; integrators split here.
    std::vector<double> breakpoints() const;

    const std::vector<std::pair<double, double>>& samples() const { return table_; }

    std::string describe() const;

  private:
    RadialPotential() = default;
    Kind kind_ = Kind::zero;
    double support_ = 0.0;
    double height_ = 0.0;   // soft_sphere
    std::vector<std::pair<double, double>> table_;
};

}  // namespace bosegas

#endif
