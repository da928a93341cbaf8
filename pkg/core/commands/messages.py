class Messages:
    """命令行输出与日志消息常量"""
    DESCRIPTION = "非自适应二叉分裂组测试：设计、模拟、参数扫描、引理校验与译码计时"
    UNKNOWN_COMMAND = "未知命令: {}"
    INVALID_PARAMETER = "参数无效: {}"
    VERIFICATION_FAILED = "校验未通过: {}"
    OUT_OF_MEMORY = "内存不足: {}"
    IO_FAILED = "读写失败: {}"
    WRITE_FAILED = "结果写入失败"
    DESIGN_WRITTEN = "设计已生成: 变体={}, 测试数={}"
    SIMULATE_DONE = "模拟完成: {} 次试验, 成功率 {:.4f}"
    SWEEP_CELL_DONE = "网格单元完成: {}"
    VERIFY_SUMMARY = "校验完成: {}/{} 项通过"
    UNKNOWN_CHECK = "未知校验项: {}"
