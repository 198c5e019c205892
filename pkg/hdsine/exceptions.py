class HdsineError(Exception):
    """所有库内异常的基类"""


class GeometryInputError(HdsineError, ValueError):
    """输入不合法: 维度不匹配, 非有限坐标, 退化子空间等"""


class PreconditionError(HdsineError, ValueError):
    """调用方没有满足运算的前置条件, 例如u不在锥内或u与某个v_i平行"""


class DomainError(HdsineError, ValueError):
    """函数方程在f(δ)≈0处没有定义"""


class ParameterError(HdsineError, ValueError):
    """常数公式的参数超出范围, 例如arcsin的参数大于1"""


class ConsistencyError(HdsineError, RuntimeError):
    """数值结果违反了理论上的界, 例如|sin| > 1 + 1e-9"""
