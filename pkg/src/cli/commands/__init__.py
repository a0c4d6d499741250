"""批处理命令"""
# 导入所有命令模块以触发注册
from . import eigs
from . import deriv
from . import critical
from . import heat
from . import flow
