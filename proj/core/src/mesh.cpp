#include "viscobeam/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viscobeam {

Mesh1D Mesh1D::uniform(double length, int elements) {
    if (length <= 0.0)
        throw std::invalid_argument("Mesh1D::uniform: length must be positive");
    if (elements < 1)
        throw std::invalid_argument("Mesh1D::uniform: need at least one element");
    std::vector<double> nodes(static_cast<std::size_t>(elements) + 1);
    const double h = length / elements;
    for (int i = 0; i <= elements; ++i)
        nodes[static_cast<std::size_t>(i)] = i * h;
    nodes.back() = length;
    return Mesh1D(std::move(nodes));
}

Mesh1D::Mesh1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2)
        throw std::invalid_argument("Mesh1D: need at least two nodes");
    if (nodes_.front() != 0.0)
        throw std::invalid_argument("Mesh1D: first node must be 0");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const double h = nodes_[i] - nodes_[i - 1];
        if (!(h > 0.0))
            throw std::invalid_argument("Mesh1D: nodes must be strictly increasing");
        h_max_ = std::max(h_max_, h);
    }
}

double Mesh1D::element_length(int e) const {
    return nodes_[static_cast<std::size_t>(e) + 1] - nodes_[static_cast<std::size_t>(e)];
}

int Mesh1D::element_containing(double x) const {
    if (x < 0.0 || x > length())
        throw std::invalid_argument("Mesh1D: coordinate outside the domain");
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    int e = static_cast<int>(it - nodes_.begin()) - 1;
    return std::min(std::max(e, 0), element_count() - 1);
}

bool Mesh1D::nested_in(const Mesh1D& fine) const {
    if (std::abs(length() - fine.length()) > 1e-12 * length()) return false;
    const double tol = 1e-12 * length();
    for (double x : nodes_) {
        auto it = std::lower_bound(fine.nodes_.begin(), fine.nodes_.end(), x - tol);
        if (it == fine.nodes_.end() || std::abs(*it - x) > tol) return false;
    }
    return true;
}

} // namespace viscobeam
