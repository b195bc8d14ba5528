#include <chrono>
#include <iostream>

#include "drflow/diff_poly.hpp"

using namespace drflow;
using Clock = std::chrono::steady_clock;

/* Compares the serial and OpenMP product kernels on a deterministic dense
 * operand pair and reports wall times; the results must agree exactly. */
int main() {
    const TruncationContext ctx{6, 14};
    const DiffPoly u1 = DiffPoly::jet(0, 0, 2, ctx);
    const DiffPoly u2 = DiffPoly::jet(1, 0, 2, ctx);
    const DiffPoly eps = DiffPoly::constant(1, 2, ctx).eps_shifted(1);

    DiffPoly base = DiffPoly::constant(1, 2, ctx) + u1 + u1.dx() + u2 +
                    eps * u2.dx().dx() + eps * eps * u1.dx().dx().dx();
    DiffPoly a = base.pow(5);
    DiffPoly b = (base + u1 * u2).pow(4);
    std::cout << "operands: " << a.terms().size() << " x " << b.terms().size() << " terms\n";

    auto t0 = Clock::now();
    DiffPoly serial = a.mul_serial(b);
    auto t1 = Clock::now();
    DiffPoly parallel = a.mul_parallel(b);
    auto t2 = Clock::now();

    auto ms = [](auto d) { return std::chrono::duration<double, std::milli>(d).count(); };
    const double ts = ms(t1 - t0), tp = ms(t2 - t1);
    std::cout << "serial:   " << ts << " ms\n";
    std::cout << "parallel: " << tp << " ms (" << serial.terms().size() << " result terms)\n";
    std::cout << "speedup:  " << (tp > 0 ? ts / tp : 0.0) << "\n";

    if (!(serial == parallel)) {
        std::cerr << "kernel mismatch\n";
        return 1;
    }
    std::cout << "kernels agree\n";
    return 0;
}
