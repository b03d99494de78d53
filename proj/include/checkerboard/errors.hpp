#ifndef CHECKERBOARD_ERRORS_HPP
#define CHECKERBOARD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace checkerboard {

// Base of every domain error. kind() is the stable name used in reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual std::string_view kind() const noexcept = 0;
};

#define CHECKERBOARD_DEFINE_ERROR(Name)                                     \
    class Name : public Error {                                             \
    public:                                                                 \
        using Error::Error;                                                 \
        std::string_view kind() const noexcept override { return #Name; }   \
    };

CHECKERBOARD_DEFINE_ERROR(ShapeMismatch)
CHECKERBOARD_DEFINE_ERROR(Singular)
CHECKERBOARD_DEFINE_ERROR(PatternViolation)
CHECKERBOARD_DEFINE_ERROR(MissingEntry)
CHECKERBOARD_DEFINE_ERROR(InsufficientMoments)
CHECKERBOARD_DEFINE_ERROR(NotHankel)
CHECKERBOARD_DEFINE_ERROR(OutOfRange)
CHECKERBOARD_DEFINE_ERROR(TruncationMismatch)
CHECKERBOARD_DEFINE_ERROR(SingularConstantTerm)
CHECKERBOARD_DEFINE_ERROR(NonzeroRemainder)
CHECKERBOARD_DEFINE_ERROR(ParseError)
CHECKERBOARD_DEFINE_ERROR(OddTruncation)

#undef CHECKERBOARD_DEFINE_ERROR

// A block pivot at `level` is not invertible. For the checkerboard
// factorization the level is the index l of the pivot pair
// (h_{2l+1,2l}, h_{2l,2l+1}); for the generic block LDU it is the block row.
class SingularPivot : public Error {
public:
    explicit SingularPivot(std::size_t level)
        : Error("singular pivot at level " + std::to_string(level)), level_(level) {}
    std::string_view kind() const noexcept override { return "SingularPivot"; }
    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

} // namespace checkerboard

#endif
