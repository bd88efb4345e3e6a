#include "sylv/errors.hpp"

#include <sstream>

namespace sylv {

std::string format_complex(std::complex<double> z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) {
        os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    }
    return os.str();
}

IngestionError::IngestionError(const std::string& path, long line, const std::string& what)
    : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

ShiftCollisionError::ShiftCollisionError(std::complex<double> shift)
    : Error("shifted system is singular at shift " + format_complex(shift)), shift_(shift) {}

SpectralCollisionError::SpectralCollisionError(std::complex<double> a, std::complex<double> b)
    : Error("spectral collision: eigenvalue " + format_complex(a) + " of the left operator and " +
            format_complex(b) + " of the right operator sum to zero") {}

}  // namespace sylv
