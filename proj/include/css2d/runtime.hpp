#ifndef CSS2D_RUNTIME_HPP
#define CSS2D_RUNTIME_HPP

namespace css2d {

/// Keeps field-sized temporaries on the heap instead of fresh mmaps; the
/// per-step allocate/free pattern otherwise dominates system time.
void configure_allocator();

}  // namespace css2d

#endif  // CSS2D_RUNTIME_HPP
