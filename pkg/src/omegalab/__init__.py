"""Numerical laboratory for the normalised Poisson kernel omega = ||x|^2 - |y|^2| / |x - y|^2.

Modules:

* ``geometry``: the kernel, chords, angles, Jacobians and Laplacian data
* ``sphere_integrals``: integrals of kernel powers and distance functions over spheres
* ``hyperbolic``: radial eigenfunctions of the hyperbolic Laplacian in the ball model
* ``dirichlet``: Dirichlet eigenvalues of geodesic disks and related bounds
* ``asymptotics``: leading terms for large eigenvalues
* ``level_curves``: level curves of the real part of the sphere integral in the exponent plane
* ``cli`` and ``service``: command line and HTTP front ends over ``commands``
"""

__version__ = "0.1.0"
