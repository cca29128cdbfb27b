package com.demo.core;

public class RetryTask implements Task {
    private int retries;
    private String id;

    public RetryTask(String id, int retries) {
        this.id = id;
        this.retries = retries;
    }

    public int run(int input) {
        int result = input;
        for (int attempt = 0; attempt <= retries; attempt++) {
            try {
                result = step(result, attempt);
                if (result >= 0) {
                    return result;
                }
            } catch (ArithmeticException e) {
                if (attempt == retries) {
                    throw new IllegalStateException("exhausted", e);
                }
            } finally {
                log(attempt);
            }
        }
        return -1;
    }

    private int step(int value, int attempt) {
        if (attempt > 0 && value % attempt == 0) {
            return value / attempt;
        }
        return value - 1;
    }

    private void log(int attempt) {
        System.out.println(id + ": attempt " + attempt);
    }

    public String name() { return id; }
}
