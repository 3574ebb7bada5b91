#include "tailfactor/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace tailfactor {

std::vector<std::size_t> solve_assignment(const Matrix& cost) {
    const std::size_t n = cost.rows();
    if (n == 0 || cost.cols() != n)
        throw std::invalid_argument("assignment: cost matrix must be square and non-empty");
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Potentials over rows (u) and columns (v); match[j] = row assigned to
    // column j, with a dummy column 0.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0);
    std::vector<double> min_slack(n + 1);
    std::vector<std::size_t> slack_arg(n + 1);
    std::vector<char> used(n + 1);

    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(min_slack.begin(), min_slack.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < min_slack[j]) {
                    min_slack[j] = cur;
                    slack_arg[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        // Augment along the alternating path.
        do {
            const std::size_t j1 = slack_arg[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

} // namespace tailfactor
