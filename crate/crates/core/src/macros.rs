/// Derives the owned/borrowed operator combinations from `&T op &T`.
macro_rules! forward_binop {
    ($ty:ty, $trait:ident, $method:ident) => {
        impl core::ops::$trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                core::ops::$trait::$method(&self, &rhs)
            }
        }

        impl core::ops::$trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                core::ops::$trait::$method(&self, rhs)
            }
        }

        impl core::ops::$trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                core::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

macro_rules! forward_neg {
    ($ty:ty) => {
        impl core::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}
