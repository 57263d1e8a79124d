package com.minimart.user;

import org.springframework.web.bind.annotation.RequestMapping;
import org.springframework.web.bind.annotation.RequestMethod;
import org.springframework.web.bind.annotation.RestController;

@RestController
public class StatusController {

    private static final String INFO = "/api/v1/info";

    @RequestMapping(value = INFO, method = RequestMethod.GET)
    public String info() {
        return "user";
    }
}
