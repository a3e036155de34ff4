// error.hpp
// Single exception type used across the toolkit.

#ifndef CMX_ERROR_HPP_
#define CMX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cmx {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmx

#endif  // CMX_ERROR_HPP_
